# ===============================================================
#  File: main.py
#  Description: Entry point orchestrating the Combgraft command
#               line
#
#  Author: ac.craft8
#  Created: 2025-06-24
#  License: MIT
# ===============================================================

# ================================
#  Module and Library Imports
# ================================
import sys

from handlers.command_handler import run


# ================================
#  Main Orchestration
# ================================

def main():
    """Run one Combgraft command and exit with its status"""
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
