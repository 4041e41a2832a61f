#!/usr/bin/env python
"""Entry point for the spline engine: `python manage.py splines ...` and the usual Django commands."""
import os
import sys


def main():
    """Run the command named on the command line."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the packages in requirements.txt "
            "into the active environment first."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
