#!/usr/bin/env python3
"""
Скрипт самопроверки iwahori-kit: быстрые контрольные вычисления перед долгими запусками
"""

import logging
import os
import sys
import traceback

from iwahori_kit.config import LOG_FORMAT, get_settings, setup_logging
from iwahori_kit.errors import IwahoriError

logger = logging.getLogger(__name__)


def check_settings():
    """Чтение IWAHORI_* из окружения и .env"""
    try:
        settings = get_settings()
    except IwahoriError as e:
        logger.error(f"✗ Settings are invalid: {e}")
        return False

    logger.info(f"Budget: {settings.budget}, product cache: {settings.product_cache_size} entries")
    if settings.budget == 0:
        logger.error("IWAHORI_BUDGET=0 refuses every lattice enumeration")
        return False

    logger.info("✓ Settings loaded")
    return True


def check_field_arithmetic():
    """Таблицы F_4 и F_8 на numpy"""
    import numpy as np

    from iwahori_kit.finite_field import get_field

    logger.info(f"numpy version: {np.__version__}")
    for q in (4, 8):
        field = get_field(q)
        for a in range(1, q):
            if field.mul_table[a, field.inv[a]] != 1:
                logger.error(f"✗ F_{q}: {a} has no inverse in the table")
                return False

    logger.info("✓ Finite field tables are consistent")
    return True


def check_cache_dir():
    """Проверка каталога кэша произведений"""
    cache_dir = get_settings().cache_dir
    if not cache_dir:
        logger.info("Product cache disabled (IWAHORI_CACHE_DIR not set)")
        return True
    try:
        os.makedirs(cache_dir, exist_ok=True)
    except OSError as e:
        logger.error(f"Cache directory {cache_dir} is not usable: {e}")
        return False
    if not os.access(cache_dir, os.W_OK):
        logger.error(f"Cache directory {cache_dir} is not writable")
        return False
    logger.info(f"✓ Cache directory {cache_dir} is writable")
    return True


def check_admissible_count():
    """|Adm(1,1,0,0)| = 33 для GL(4)"""
    from iwahori_kit.affine_weyl import get_group

    count = len(get_group("GL", 4).admissible_set((1, 1, 0, 0)))
    logger.info(f"Adm((1,1,0,0)) in GL(4): {count} elements")
    return count == 33


def check_minuscule_identity():
    """v^{l(t^mu)} z_mu * I_K = I_{K mu K} для GL(2) и GSp(4)"""
    from iwahori_kit.hecke import get_algebra
    from iwahori_kit.spherical import verify_minuscule_identity

    cases = [("GL", 2, (1, 0)), ("GL", 3, (1, 1, 0)), ("GSp", 2, (1, 1, 0, 0))]
    return all(verify_minuscule_identity(get_algebra(kind, d), mu) for kind, d, mu in cases)


def check_centrality():
    """z_lambda лежит в центре"""
    from iwahori_kit.bernstein import bernstein_z
    from iwahori_kit.hecke import get_algebra

    algebra = get_algebra("GL", 2)
    ok = all(algebra.is_central(bernstein_z(algebra, lam)) for lam in [(1, 0), (2, 0), (1, 1)])
    logger.info(f"Centrality of z_lambda in GL(2): {ok}")
    return ok


def check_weight_multiplicity():
    """m_{(2,1,0)}((1,1,1)) = 2 для GL(3)"""
    from iwahori_kit.characters import weight_multiplicity
    from iwahori_kit.root_data import build_root_datum

    m = weight_multiplicity((2, 1, 0), (1, 1, 1), build_root_datum("GL", 3))
    logger.info(f"m_(2,1,0)((1,1,1)) = {m}")
    return m == 2


def check_lattice_counts():
    """|M(F_q)| = 2q + 1 для GL(2), r = 1, (n-, n+) = (0, 1)"""
    from iwahori_kit.lattice_models import LatticeModelParams, enumerate_points, match_strata

    for q in (2, 3):
        params = LatticeModelParams("GL", 2, 0, 1, q, "M", 1)
        points = enumerate_points(params)
        report = match_strata(points, params)
        logger.info(f"q={q}: {len(points)} points, orbits {report.orbit_sizes}, verdict {report.verdict}")
        if len(points) != 2 * q + 1 or report.verdict != "match":
            return False
    return True


CHECKS = [
    ("Settings", check_settings),
    ("Finite fields", check_field_arithmetic),
    ("Cache directory", check_cache_dir),
    ("Admissible set", check_admissible_count),
    ("Minuscule identity", check_minuscule_identity),
    ("Centrality", check_centrality),
    ("Weight multiplicity", check_weight_multiplicity),
    ("Lattice counts", check_lattice_counts),
]


def main():
    """Основная функция самопроверки"""
    try:
        setup_logging(get_settings())
    except IwahoriError:
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
    logger.info("=== Самопроверка iwahori-kit ===")

    failed_checks = []

    for check_name, check_func in CHECKS:
        logger.info(f"--- Checking {check_name} ---")
        try:
            passed = check_func()
        except Exception as e:
            logger.error(f"Error in {check_name}: {e}")
            logger.error(traceback.format_exc())
            passed = False
        if not passed:
            failed_checks.append(check_name)

    logger.info("=== Самопроверка завершена ===")

    if not failed_checks:
        logger.info("✓ Все проверки пройдены успешно!")
        return 0
    logger.warning(f"⚠️ Проблемы найдены: {', '.join(failed_checks)}")
    return 1


if __name__ == "__main__":
    sys.exit(main())
