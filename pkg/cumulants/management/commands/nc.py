import json

from django.core.management.base import CommandError

from cumulants.partitions import (
    NC_HARD_LIMIT,
    Composition,
    connecting_partitions,
    enumerate_nc,
    enumerate_nc_pairings,
    ensure_noncrossing,
    kreweras,
)
from cumulants.serializers import PartitionSerializer

from ._base import EXIT_USAGE, ReportCommand


class Command(ReportCommand):
    help = 'Noncrossing partitions: list NC(p) or NC_2(p), Kreweras complements, connecting partitions.'

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest='action', required=True)

        listing = actions.add_parser('list', help='Stream NC(p), one JSON object per line.')
        listing.add_argument('--p', type=int, required=True)
        listing.add_argument('--pairings', action='store_true', help='Only noncrossing pairings.')

        complement = actions.add_parser('kreweras', help='Print the Kreweras complement of a partition.')
        complement.add_argument('--p', type=int, required=True)
        complement.add_argument('--blocks', required=True, help='JSON list of blocks, e.g. "[[1,2],[3]]".')

        connecting = actions.add_parser('connecting', help='Stream pi in NC(p) with pi v gamma_c = 1_p.')
        connecting.add_argument('--composition', required=True, help='Comma-separated parts, e.g. "2,2".')

    def run(self, action, **options):
        if action == 'list':
            if options['pairings']:
                partitions = enumerate_nc_pairings(options['p'], NC_HARD_LIMIT)
            else:
                partitions = enumerate_nc(options['p'], NC_HARD_LIMIT)
            self._stream(partitions)
        elif action == 'kreweras':
            partition = self._parse_partition(options['p'], options['blocks'])
            self.write_json(PartitionSerializer(kreweras(ensure_noncrossing(partition))).data)
        elif action == 'connecting':
            composition = Composition.parse(options['composition'])
            self._stream(connecting_partitions(composition, NC_HARD_LIMIT))

    def _stream(self, partitions):
        for partition in partitions:
            self.write_json(PartitionSerializer(partition).data)

    def _parse_partition(self, p, text):
        try:
            blocks = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CommandError(f"--blocks is not valid JSON: {exc}", returncode=EXIT_USAGE)
        serializer = PartitionSerializer(data={'p': p, 'blocks': blocks})
        if not serializer.is_valid():
            raise CommandError(json.dumps(serializer.errors), returncode=EXIT_USAGE)
        return serializer.validated_data['partition']
