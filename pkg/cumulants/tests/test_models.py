from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from cumulants import models
from cumulants.models import StarLabel, TraceWord

P, S = StarLabel.PLAIN, StarLabel.STAR


class StarLabelTests(SimpleTestCase):
    def test_values_build_words(self):
        self.assertEqual(TraceWord.of((2, 'star'), (1, 'plain')), TraceWord.of((2, S), (1, P)))
        with self.assertRaises(ValueError):
            TraceWord.of((1, '*'))

    def test_flip_and_suffix(self):
        self.assertIs(P.flip(), S)
        self.assertIs(S.flip(), P)
        self.assertEqual(S.suffix, '*')
        self.assertEqual(P.suffix, '')

    def test_enum_is_the_only_star_vocabulary(self):
        self.assertEqual([label.value for label in StarLabel], ['plain', 'star'])
        self.assertFalse(hasattr(models, 'STAR_CHOICES'))


class TraceWordTests(SimpleTestCase):
    def test_parse(self):
        w = TraceWord.parse('u^2, u^3*, u')
        self.assertEqual(w, TraceWord.of((2, P), (3, S), (1, P)))
        self.assertEqual(str(w), 'u^2, u^3*, u')
        self.assertEqual(w.labels, (P, P, S, S, S, P))

    def test_parse_rejects(self):
        for text in ('', 'v^2', 'u^0', 'u^2**'):
            with self.assertRaises(ValidationError, msg=text):
                TraceWord.parse(text)

    def test_enumerate(self):
        words = list(TraceWord.enumerate(3, 3))
        self.assertEqual(len(words), 2 + 6 + 18)
        self.assertEqual([w.total_power for w in words], sorted(w.total_power for w in words))
        self.assertEqual(len(list(TraceWord.enumerate(4, 1))), 8)

    def test_rotate_and_subword(self):
        w = TraceWord.of((1, P), (2, S), (3, P))
        self.assertEqual(w.rotate(1), TraceWord.of((2, S), (3, P), (1, P)))
        self.assertEqual(w.rotate(3), w)
        self.assertEqual(w.subword([0, 2]), TraceWord.of((1, P), (3, P)))
