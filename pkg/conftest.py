# ===============================================================
#  File: conftest.py
#  Description: Pytest configuration for Combgraft
#
#  Author: ac.craft8
#  Created: 2025-06-24
#  License: MIT
# ===============================================================

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: seeded acceptance sweeps (deselect with -m 'not slow')")
