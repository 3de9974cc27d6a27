"""
Runs a list of verification statements on a small thread pool.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

from config import WORKER_THREADS
from models.check_result import FAIL, CheckResult

logger = logging.getLogger(__name__)


def _evaluate(statement, thunk):
    try:
        result = thunk()
    except ValueError as e:
        logger.warning("Statement %s raised %s", statement, e)
        return CheckResult(statement, FAIL, detail=f"{type(e).__name__}: {e}")
    if isinstance(result, CheckResult):
        return result
    return CheckResult.from_bool(statement, bool(result))


def run_statements(statements, workers=None):
    """Evaluate (statement_id, thunk) pairs and return their CheckResults.

    Thunks return a CheckResult or a boolean. Results come back in the order
    the statements were given, whatever the pool size.

    Args:
        statements (list): (statement_id, callable) pairs
        workers (int, optional): Pool size; defaults to WORKER_THREADS

    Returns:
        list: CheckResult per statement
    """
    workers = workers or WORKER_THREADS
    if workers <= 1 or len(statements) <= 1:
        results = [_evaluate(statement, thunk) for statement, thunk in statements]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_evaluate, statement, thunk) for statement, thunk in statements]
            results = [future.result() for future in futures]
    failed = sum(1 for r in results if not r.passed)
    if failed:
        logger.warning("%d of %d statements failed", failed, len(results))
    return results
