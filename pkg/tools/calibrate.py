from __future__ import (
    unicode_literals,
    absolute_import,
    print_function,
    division,
    )

import io
import os
import sys
import json
import logging

import numpy as np

from spherex import __version__
from spherex.poly import HomogPoly
from spherex.rounding import optimize
from spherex.oracle import brute_norm2, weak_decoupling_report
from spherex.utils import compositions

log = logging.getLogger("calibrate")

N = 5
D = 4
NNC_SEEDS = range(0, 50)
GENERAL_SEEDS = range(1000, 1050)
WEAK_SEEDS = range(2000, 2050)
WEAK_N = 4
NNC_LEVELS = (4, 8)
GENERAL_LEVELS = (8,)
SAFETY = 2.0
ORACLE_RESTARTS = 200

DEFAULT_OUTPUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'tests', 'calibration.json')

def random_poly(n, d, seed, nonneg=False):
    rng = np.random.default_rng(seed)
    terms = {}
    for alpha in compositions(n, d):
        terms[alpha] = float(rng.random()) if nonneg else float(rng.standard_normal())
    return HomogPoly(n, d, terms)

def worst_ratio(method, seeds, levels, nonneg):
    worst = 0.0
    for q in levels:
        for seed in seeds:
            f = random_poly(N, D, seed, nonneg)
            report = optimize(f, q=q, method=method)
            log.debug("%s q=%d seed=%d ratio=%g", method, q, seed, report.ratio)
            worst = max(worst, report.ratio)
    log.info("%s: worst ratio %g", method, worst)
    return worst

def worst_weak_decoupling(seeds):
    worst = 0.0
    for seed in seeds:
        f = random_poly(WEAK_N, D, seed)
        norm = brute_norm2(f, restarts=ORACLE_RESTARTS, seed=seed).value
        for entry in weak_decoupling_report(f, norm, restarts=ORACLE_RESTARTS, seed=seed):
            worst = max(worst, entry['ratio'])
    log.info("weak decoupling: worst ratio %g", worst)
    return worst

def calibrate(path):
    observed = {
        'nnc_ratio': worst_ratio('nnc', NNC_SEEDS, NNC_LEVELS, True),
        'general_ratio': worst_ratio('general', GENERAL_SEEDS, GENERAL_LEVELS, False),
        'weak_decoupling': worst_weak_decoupling(WEAK_SEEDS),
    }
    data = dict((key, SAFETY * value) for key, value in observed.items())
    data['observed'] = observed
    data['protocol'] = {
        'version': __version__,
        'n': N,
        'd': D,
        'nnc_seeds': [NNC_SEEDS.start, NNC_SEEDS.stop],
        'nnc_levels': list(NNC_LEVELS),
        'general_seeds': [GENERAL_SEEDS.start, GENERAL_SEEDS.stop],
        'general_levels': list(GENERAL_LEVELS),
        'weak_seeds': [WEAK_SEEDS.start, WEAK_SEEDS.stop],
        'weak_n': WEAK_N,
        'oracle_restarts': ORACLE_RESTARTS,
        'safety': SAFETY,
    }
    with io.open(path, 'w', encoding='utf-8') as fo:
        fo.write(json.dumps(data, sort_keys=True, indent=2))
        fo.write("\n")
    return data

if __name__ == "__main__":
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    output = sys.argv[1] if len(sys.argv) > 1 else DEFAULT_OUTPUT
    print(json.dumps(calibrate(output), sort_keys=True, indent=2))
