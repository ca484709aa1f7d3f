import logging
import sys
import traceback

from iwahori_kit.cli import main
from iwahori_kit.config import get_settings, setup_logging
from iwahori_kit.errors import IwahoriError

logger = logging.getLogger(__name__)


def setup_environment():
    """Настройка окружения и загрузка конфигурации"""
    try:
        settings = get_settings()
        setup_logging(settings)
        logger.info(f"Environment ready: budget={settings.budget}, cache_dir={settings.cache_dir}")
    except IwahoriError as e:
        logger.critical(f"Critical error during environment setup: {str(e)}")
        logger.critical(traceback.format_exc())
        raise


if __name__ == "__main__":
    try:
        setup_environment()
    except IwahoriError as e:
        sys.exit(e.exit_code)
    sys.exit(main(sys.argv[1:]))
