# cumulants/conf.py
import os
from dataclasses import dataclass, fields, replace
from typing import Tuple, Union

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured, ValidationError

OUTPUT_FORMATS = ('json', 'csv')

_SETTINGS_KEYS = {
    'enumeration_limit': 'ENUMERATION_LIMIT',
    'oracle_max_p': 'ORACLE_MAX_P',
    'oracle_n_values': 'ORACLE_N_VALUES',
    'oracle_max_length': 'ORACLE_MAX_LENGTH',
    'tuple_budget': 'TUPLE_BUDGET',
    'output_format': 'OUTPUT_FORMAT',
    'worker_count': 'WORKERS',
}


@dataclass(frozen=True)
class Config:
    enumeration_limit: int = 14
    oracle_max_p: int = 6
    oracle_n_values: Tuple[int, ...] = (1, 2, 3)
    oracle_max_length: int = 12
    tuple_budget: int = 1_000_000
    output_format: str = 'json'
    worker_count: Union[int, str] = 1

    def __post_init__(self):
        object.__setattr__(self, 'oracle_n_values', tuple(int(n) for n in self.oracle_n_values))
        worker_count = self.worker_count
        if isinstance(worker_count, str) and worker_count != 'auto':
            try:
                worker_count = int(worker_count)
            except ValueError:
                raise ValidationError(f"Worker count must be an integer or 'auto', got {worker_count!r}") from None
        object.__setattr__(self, 'worker_count', worker_count)
        self.clean()

    def clean(self):
        for name in ('enumeration_limit', 'oracle_max_p', 'oracle_max_length', 'tuple_budget'):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.oracle_n_values or any(n < 1 for n in self.oracle_n_values):
            raise ValidationError(f"Oracle dimensions must be positive, got {self.oracle_n_values}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValidationError(f"Output format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if self.worker_count != 'auto' and self.worker_count < 1:
            raise ValidationError(f"Worker count must be positive, got {self.worker_count}")

    @property
    def workers(self) -> int:
        if self.worker_count == 'auto':
            return os.cpu_count() or 1
        return self.worker_count


def get_config(**overrides) -> Config:
    """Config from ``settings.FREEHAAR``, with keyword overrides (None means keep)."""
    raw = getattr(settings, 'FREEHAAR', {})
    values = {name: raw[key] for name, key in _SETTINGS_KEYS.items() if key in raw}
    try:
        config = Config(**values)
    except ValidationError as exc:
        raise ImproperlyConfigured(f"Invalid FREEHAAR settings: {'; '.join(exc.messages)}") from exc
    known = {f.name for f in fields(Config)}
    changes = {k: v for k, v in overrides.items() if k in known and v is not None}
    return replace(config, **changes) if changes else config
