"""
Django settings for freehaar project.

The project carries no web surface: it hosts the ``cumulants`` app, whose
management commands compute and verify free cumulants of traces of powers
of the Brown-algebra generating matrix.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/
"""

from pathlib import Path
from decouple import config, Csv
# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='freehaar-local-only-not-a-secret')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'cumulants',
]

# No database: every computation is in memory and exact.
DATABASES = {}

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Cumulant engine configuration
FREEHAAR = {
    'ENUMERATION_LIMIT': config('FREEHAAR_ENUMERATION_LIMIT', default=14, cast=int),
    'ORACLE_MAX_P': config('FREEHAAR_ORACLE_MAX_P', default=6, cast=int),
    'ORACLE_N_VALUES': config('FREEHAAR_ORACLE_N_VALUES', default='1,2,3', cast=Csv(int)),
    'ORACLE_MAX_LENGTH': config('FREEHAAR_ORACLE_MAX_LENGTH', default=12, cast=int),
    'TUPLE_BUDGET': config('FREEHAAR_TUPLE_BUDGET', default=1_000_000, cast=int),
    'OUTPUT_FORMAT': config('FREEHAAR_OUTPUT_FORMAT', default='json'),
    'WORKERS': config('FREEHAAR_WORKERS', default='1'),
}


# Logging goes to stderr; stdout is reserved for report documents.
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'cumulants': {
            'handlers': ['console'],
            'level': config('FREEHAAR_LOG_LEVEL', default='WARNING'),
            'propagate': False,
        },
    },
}
