from django.apps import AppConfig


class HyperwalkConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hyperwalk'
    verbose_name = 'Hypercube many-body interference'
