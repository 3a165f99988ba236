"""Run every verification suite and print one JSON line each."""

import json
import sys
import time

from coxclt.verify import SUITES, run_suite

failed = False
for name in SUITES:
    t0 = time.perf_counter()
    res = run_suite(name)
    failed |= not res.passed
    print(json.dumps({**res.as_dict(), "seconds": round(time.perf_counter() - t0, 1)}))
sys.exit(1 if failed else 0)
