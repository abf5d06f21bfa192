"""Core functionality package: settings, logging and error handling."""
