import csv

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from rest_framework.renderers import JSONRenderer

from cumulants.conf import OUTPUT_FORMATS
from cumulants.exceptions import BudgetExceeded


# Exit codes: 0 pass, 1 finding or budget violation, 2 usage.
EXIT_FINDING = 1
EXIT_USAGE = 2


class ReportCommand(BaseCommand):
    """Base for commands that print machine-readable documents on stdout."""

    def add_format_argument(self, parser):
        parser.add_argument('--format', choices=OUTPUT_FORMATS, default=None,
                            help='Output format (default: FREEHAAR_OUTPUT_FORMAT).')

    def add_workers_argument(self, parser):
        parser.add_argument('--workers', default=None,
                            help="Worker processes, an integer or 'auto' (default: FREEHAAR_WORKERS).")

    def write_json(self, data):
        self.stdout.write(JSONRenderer().render(data).decode())

    def write_csv(self, header, rows):
        writer = csv.writer(self.stdout, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)

    def handle(self, *args, **options):
        try:
            return self.run(**options)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=EXIT_USAGE)
        except BudgetExceeded as exc:
            raise CommandError(str(exc), returncode=EXIT_FINDING)

    def run(self, **options):
        raise NotImplementedError('subclasses of ReportCommand must provide a run() method')
