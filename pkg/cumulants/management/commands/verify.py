import logging

from decouple import Csv
from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from cumulants.conf import get_config
from cumulants.laurent import rational_str
from cumulants.oracle import compare_engine_oracle
from cumulants.serializers import RationalField, VerificationReportSerializer
from cumulants.services import TraceCumulantService

from ._base import EXIT_FINDING, ReportCommand

logger = logging.getLogger('cumulants.commands')


class Command(ReportCommand):
    help = ('Check the circular-family cumulant pattern and compare the symbolic engine '
            'with the brute-force oracle. Exit 0 iff nothing is found.')

    def add_arguments(self, parser):
        parser.add_argument('--max-p', type=int, default=None,
                            help='Largest total power (default: FREEHAAR_ORACLE_MAX_P).')
        parser.add_argument('--max-s', type=int, default=4, help='Largest number of trace factors.')
        parser.add_argument('--n', type=Csv(int), default=None,
                            help='Comma-separated dimensions for the oracle (default: FREEHAAR_ORACLE_N_VALUES).')
        self.add_format_argument(parser)
        self.add_workers_argument(parser)

    def run(self, max_p, max_s, n, format, workers, **options):
        config = get_config(output_format=format, worker_count=workers,
                            oracle_n_values=tuple(n) if n is not None else None)
        max_p = config.oracle_max_p if max_p is None else max_p
        if max_p < 1 or max_s < 1:
            raise ValidationError(f"--max-p and --max-s must be positive, got {max_p} and {max_s}")

        oracle_p = min(max_p, config.oracle_max_p)
        if oracle_p < max_p:
            logger.warning("oracle comparison capped at total power %d (FREEHAAR_ORACLE_MAX_P)", oracle_p)
        with TraceCumulantService(workers=config.worker_count) as engine:
            circularity = engine.circularity_report(max_p, max_s)
            comparison = compare_engine_oracle(engine, oracle_p, config.oracle_n_values)

        if config.output_format == 'csv':
            self.write_csv(['suite', 'word', 'n', 'expected', 'actual', 'ok'],
                           self._csv_rows(circularity, comparison))
        else:
            self.write_json(VerificationReportSerializer(
                {'circularity': circularity, 'comparison': comparison}
            ).data)

        findings = len(circularity.violations) + len(comparison.mismatches)
        if findings:
            raise CommandError(f"{findings} violations or mismatches found", returncode=EXIT_FINDING)

    def _csv_rows(self, circularity, comparison):
        render = RationalField().to_representation
        for entry in circularity.entries:
            yield ['circularity', str(entry.word), '', render(entry.expected),
                   render(entry.limit), 'true' if entry.ok else 'false']
        for entry in comparison.entries:
            yield ['oracle', str(entry.word), entry.n_value, rational_str(entry.oracle),
                   rational_str(entry.engine), 'true' if entry.ok else 'false']
