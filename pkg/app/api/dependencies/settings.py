from ...core.settings import Settings, settings


def get_settings() -> Settings:
    return settings
