"""
Hyperwalk - Django Settings

The engine has no web surface and no database: Django provides the
settings layer, the management-command CLI and the test runner.
"""
import os
from pathlib import Path
import environ

BASE_DIR = Path(__file__).resolve().parent.parent

env = environ.Env(
    DEBUG=(bool, False),
    HYPERWALK_MAX_N=(int, 20),
    HYPERWALK_MAX_DIMENSION=(int, 12),
    HYPERWALK_TOLERANCE=(float, 1e-10),
    HYPERWALK_WORKERS=(int, 1),
    HYPERWALK_FINALS_WARN=(int, 10_000_000),
    HYPERWALK_MAX_FINALS=(int, 100_000_000),
    HYPERWALK_ORACLE_MAX_N=(int, 9),
)
environ.Env.read_env(os.path.join(BASE_DIR, ".env"))

SECRET_KEY = env("SECRET_KEY", default="hyperwalk-local-only")
DEBUG = env("DEBUG")
ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    "hyperwalk.apps.HyperwalkConfig",
]

# No models; the dummy backend is enough for the command framework
DATABASES = {}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

USE_I18N = False
USE_TZ = True

# ─── Engine bounds ───────────────────────────────────────────────────────────
# Permanent bound: bosonic and distinguishable transitions with more
# particles than this are refused (Ryser is O(2^N N)).
HYPERWALK_MAX_N = env("HYPERWALK_MAX_N")

# Largest hypercube dimension for dense builders (n = 2^d modes)
HYPERWALK_MAX_DIMENSION = env("HYPERWALK_MAX_DIMENSION")

# Probabilities below this are reported as suppressed
HYPERWALK_TOLERANCE = env("HYPERWALK_TOLERANCE")

# Default worker-pool size for per-final-state work
HYPERWALK_WORKERS = env("HYPERWALK_WORKERS")

# Final-state enumeration limits
HYPERWALK_FINALS_WARN = env("HYPERWALK_FINALS_WARN")
HYPERWALK_MAX_FINALS = env("HYPERWALK_MAX_FINALS")

# Factorial-cost guard for the literal path-sum oracle
HYPERWALK_ORACLE_MAX_N = env("HYPERWALK_ORACLE_MAX_N")

# Logging: collapse arrays and long occupation lists in log arguments
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "filters": {
        "large_arrays": {
            "()": "config.log_filters.LargeArrayFilter",
        },
    },
    "formatters": {
        "plain": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "filters": ["large_arrays"],
            "formatter": "plain",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": os.environ.get("LOG_LEVEL", "INFO"),
    },
}
