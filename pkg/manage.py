#!/usr/bin/env python
"""Hyperwalk command-line entry point.

    python manage.py unitary --d 3
    python manage.py verify --d 3 --initial 3,0,1,0,0,3,0,1
    python manage.py test hyperwalk
"""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the engine stack with "
            "'pip install -r requirements.txt' in an activated virtual environment."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
