# cumulants/serializers.py
from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from .laurent import DIVERGENT, LaurentPoly, parse_rational, rational_str
from .models import TraceWord
from .partitions import SetPartition

SCHEMA_VERSION = 1


class LaurentPolyField(serializers.Field):
    """{"-3": "-1/1", "0": "2/1"}: exponent strings to rationals, ascending."""

    def to_representation(self, value):
        return value.to_json()

    def to_internal_value(self, data):
        try:
            return LaurentPoly.from_json(data)
        except DjangoValidationError as exc:
            raise serializers.ValidationError(exc.messages)


class RationalField(serializers.Field):
    def to_representation(self, value):
        if value is DIVERGENT:
            return 'divergent'
        return rational_str(value)

    def to_internal_value(self, data):
        try:
            return parse_rational(data)
        except DjangoValidationError as exc:
            raise serializers.ValidationError(exc.messages)


class WordField(serializers.Field):
    def to_representation(self, value):
        return value.to_json()

    def to_internal_value(self, data):
        try:
            return TraceWord.parse(data)
        except DjangoValidationError as exc:
            raise serializers.ValidationError(exc.messages)


class PartitionSerializer(serializers.Serializer):
    p = serializers.IntegerField(source='ground_size', min_value=0)
    blocks = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False),
    )

    def validate(self, attrs):
        try:
            attrs['partition'] = SetPartition.from_blocks(attrs['ground_size'], attrs['blocks'])
        except DjangoValidationError as exc:
            raise serializers.ValidationError({'blocks': exc.messages})
        return attrs


class CumulantReportSerializer(serializers.Serializer):
    word = WordField()
    laurent = LaurentPolyField(source='value')
    limit = RationalField()
    contributing = serializers.IntegerField(source='contributing_partitions')


class CircularityEntrySerializer(serializers.Serializer):
    word = WordField()
    laurent = LaurentPolyField(source='value')
    limit = RationalField()
    expected = RationalField()
    problems = serializers.ListField(child=serializers.CharField())


class ComparisonEntrySerializer(serializers.Serializer):
    word = WordField()
    n = serializers.IntegerField(source='n_value')
    engine = RationalField()
    oracle = RationalField()


class VerificationReportSerializer(serializers.Serializer):
    """Combined output of ``verify``: circularity violations and engine/oracle mismatches."""
    schema = serializers.SerializerMethodField()
    checked = serializers.SerializerMethodField()
    violations = serializers.SerializerMethodField()
    mismatches = serializers.SerializerMethodField()

    def get_schema(self, obj):
        return SCHEMA_VERSION

    def get_checked(self, obj):
        return obj['circularity'].checked + obj['comparison'].checked

    def get_violations(self, obj):
        return CircularityEntrySerializer(obj['circularity'].violations, many=True).data

    def get_mismatches(self, obj):
        return ComparisonEntrySerializer(obj['comparison'].mismatches, many=True).data
