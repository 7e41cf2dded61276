"""Pytest wiring: configure Django before the test modules are collected."""
import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")
django.setup()
