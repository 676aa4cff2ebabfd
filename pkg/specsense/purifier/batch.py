from concurrent.futures import ThreadPoolExecutor

from . import log
from .operator import purify
from specsense.exceptions import PurifyBatchError


def purify_batch(r, proposals, params, raise_on_error=True):
    """
    Purify every proposal of one recording on a thread pool.

    Results keep the order of `proposals` and equal what purify() returns
    for each element.  A failing element does not stop the others; once all
    ran, failures raise PurifyBatchError carrying {index: exception} and
    the partial results.  With `raise_on_error=False` failed elements are
    returned as None instead.
    """
    proposals = list(proposals)
    if not proposals:
        return []
    with ThreadPoolExecutor(max_workers=params.workers) as pool:
        futures = [pool.submit(purify, r, p, params) for p in proposals]
    results, errors = [], {}
    for index, future in enumerate(futures):
        try:
            results.append(future.result())
        except Exception as err:
            errors[index] = err
            results.append(None)
            log.warning("could not purify proposal", extra=dict(
                proposal_index=index, err_kls=type(err).__name__,
                err=str(err)))
    log.debug("purified batch", extra=dict(
        n_proposals=len(proposals), n_failed=len(errors),
        workers=params.workers))
    if raise_on_error and errors:
        msg = "%s of %s proposals failed: indices %s" % (
            len(errors), len(proposals), sorted(errors))
        log.error(msg, extra=dict(failed=sorted(errors)))
        raise PurifyBatchError(msg, errors, results)
    return results
