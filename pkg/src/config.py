import json
import logging
from functools import lru_cache

from utils import resource_path

logger = logging.getLogger(__name__)

SETTINGS_FILE = 'settings.json'

DEFAULT_SETTINGS = {
    "max_expansion_depth": 64,
    "max_address_length": 4096,
    "scan_step": 0.001,
    "r_ceiling": 1.0 - 1e-9,
    "root_xtol": 1e-15,
    "contact_tol": 1e-6,
    "classify_depth": 12,
    "certify_depth": 16,
    "canvas_width": 800,
    "canvas_height": 800,
    "canvas_margin": 20,
    "highlight_min_depth": 40,
    "highlight_pixel_tail": 0.25,
    "stroke_width": 2.0,
}


@lru_cache(maxsize=1)
def load_settings():
    """Bundled defaults from settings.json merged over the built-in table."""
    settings = dict(DEFAULT_SETTINGS)
    try:
        with open(resource_path(SETTINGS_FILE), 'r', encoding='utf-8') as f:
            stored = json.load(f)
    except FileNotFoundError:
        logger.warning(f"{SETTINGS_FILE} not found, using built-in defaults")
        return settings
    except json.JSONDecodeError as e:
        logger.warning(f"{SETTINGS_FILE} is malformed ({e}), using built-in defaults")
        return settings

    unknown = set(stored) - set(DEFAULT_SETTINGS)
    if unknown:
        logger.warning(f"Ignoring unknown settings: {', '.join(sorted(unknown))}")
    for key in DEFAULT_SETTINGS:
        if key in stored:
            settings[key] = type(DEFAULT_SETTINGS[key])(stored[key])
    return settings


def get_setting(name):
    return load_settings()[name]
