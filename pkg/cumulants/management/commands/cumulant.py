from cumulants.conf import get_config
from cumulants.laurent import rational_str
from cumulants.models import TraceWord
from cumulants.serializers import CumulantReportSerializer, RationalField
from cumulants.services import TraceCumulantService

from ._base import ReportCommand


class Command(ReportCommand):
    help = 'Free cumulant of a trace word, e.g. --word "u^2, u^3*, u^2*".'

    def add_arguments(self, parser):
        parser.add_argument('--word', required=True,
                            help='Comma-separated factors u^<p>, each with an optional trailing *.')
        parser.add_argument('--at-n', type=int, default=None, help='Also evaluate at this dimension.')
        parser.add_argument('--moment', action='store_true', help='Also report the symbolic moment.')
        self.add_format_argument(parser)
        self.add_workers_argument(parser)

    def run(self, word, at_n, moment, format, workers, **options):
        config = get_config(output_format=format, worker_count=workers)
        word = TraceWord.parse(word)
        with TraceCumulantService(workers=config.worker_count) as engine:
            report = engine.brown(word)
            moment_value = engine.trace_moment(word) if moment else None

        data = dict(CumulantReportSerializer(report).data)
        if at_n is not None:
            data['at_n'] = {'n': at_n, 'value': rational_str(report.value.evaluate(at_n))}
        if moment:
            data['moment'] = moment_value.to_json()

        if config.output_format == 'csv':
            header = ['word', 'laurent', 'limit', 'contributing']
            row = [str(word), str(report.value), RationalField().to_representation(report.limit),
                   report.contributing_partitions]
            if at_n is not None:
                header.append(f"at_n={at_n}")
                row.append(data['at_n']['value'])
            if moment:
                header.append('moment')
                row.append(str(moment_value))
            self.write_csv(header, [row])
        else:
            self.write_json(data)
