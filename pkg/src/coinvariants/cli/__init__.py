"""Query parsing and text rendering for the command-line front end."""
