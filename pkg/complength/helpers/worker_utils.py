import logging

from complength import errors

logger = logging.getLogger(__name__)


class VerifyTask:
    '''
    The per-item function shipped to workers: GroupItem -> BoundReport.
    '''

    def __init__(self, theorem, options):
        self.theorem = theorem
        self.options = options

    def __call__(self, item):
        from complength import verify

        if item.error is not None:
            return verify.BoundReport(item.label, self.theorem, verify.SKIPPED, note=item.error)
        try:
            report = verify.verify(item.target, self.theorem, **self.options)
        except (ValueError, errors.BudgetExhausted) as err:
            logger.info('%s skipped: %s', item.label, err)
            return verify.BoundReport(item.label, self.theorem, verify.SKIPPED, note=str(err))
        report.group = item.label
        # witnesses stay on the worker; their orders are already in the flags record
        if report.flags is not None:
            report.flags.witnesses = {flag: _OrderOnly(w.order()) for flag, w in report.flags.witnesses.items()}
        return report


class _OrderOnly:
    def __init__(self, order):
        self._order = order

    def order(self):
        return self._order
