# ===============================================================
#  File: logger.py
#  Description: Logging utilities for Combgraft
#
#  Author: ac.craft8
#  Created: 2025-06-24
#  License: MIT
# ===============================================================

# ================================
#  Module and Library Imports
# ================================
import json
import logging
import os
import sys
from datetime import datetime

LOG_FORMAT = '%(asctime)s - %(name)s - %(message)s'


# ================================
#  Function Definitions
# ================================

def setup_logging(level='WARNING', log_file=None):
    """Initialize logging system and return report logger"""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))

    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)

    report_logger = logging.getLogger('combgraft.reports')
    report_logger.setLevel(level)
    return report_logger


def log_report(path, command, report):
    """Append a finished report to the JSON run journal"""
    record = {
        'timestamp': datetime.now().isoformat(),
        'command': command,
        'report': report
    }

    try:
        if os.path.exists(path):
            with open(path, 'r', encoding='utf-8') as f:
                journal = json.load(f)
        else:
            journal = []
        journal.append(record)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(journal, f, ensure_ascii=False, indent=2)
    except (OSError, ValueError) as e:
        logging.getLogger('combgraft.reports').error("ERROR writing run journal %s: %s", path, e)
