max_t = 20                # Terminal cap for the exact join engine
max_e = 20                # Edge cap for the exhaustive oracles
max_path_len = 12         # Path / ear / circuit enumeration cap in the verifier
relabel_search_cap = 50000  # Assignments tried by the attribute uniqueness search
log_level = 'WARNING'
log_file = ''             # Empty disables the log file
