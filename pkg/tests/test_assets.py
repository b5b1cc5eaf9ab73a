"""Bundled data integrity: the valence table and the per-bin template corpus.

The templates are engineered so the whole readability/sentiment pipeline is
exactly reproducible: every template in bin b scores the bin-center sentiment
bit-for-bit, and every template shares one readability grade (standalone and
composed with the default query).
"""

import importlib.resources
import re

import pytest

from engagesim.policy import BIN_COUNT, bin_centers
from engagesim.scoring import fk_grade

_WORDS = re.compile(r"[a-z]+")

DEFAULT_QUERY = "Cats are the most"


def _data_path(name):
    return importlib.resources.files("engagesim.data").joinpath(name)


class TestBundledLexicon:
    def test_size_in_contract_range(self, bundled_scorer):
        assert 1400 <= len(bundled_scorer) <= 1600

    def test_file_entries_well_formed(self):
        rows = 0
        with importlib.resources.as_file(_data_path("lexicon.csv")) as path:
            for line in open(path, encoding="utf-8"):
                text = line.strip()
                if not text or text.startswith("#"):
                    continue
                word, valence = text.split(",")
                assert word == word.lower()
                assert 0.0 <= float(valence) <= 1.0
                rows += 1
        assert rows >= 1400

    def test_query_words_unknown_to_lexicon(self, bundled_scorer):
        for word in DEFAULT_QUERY.lower().split():
            assert word not in bundled_scorer
        assert bundled_scorer.score(DEFAULT_QUERY) == 0.5


class TestBundledTemplates:
    def test_bank_sizes(self, bundled_realizer):
        assert bundled_realizer.bins == BIN_COUNT
        for b in range(BIN_COUNT):
            assert len(bundled_realizer.bank(b)) >= 5

    def test_every_template_scores_its_bin_center_exactly(self, bundled_scorer,
                                                          bundled_realizer):
        centers = bin_centers()
        for b in range(BIN_COUNT):
            center = float(centers[b])
            for template in bundled_realizer.bank(b):
                assert bundled_scorer.score(template) == center
                # contract bound is looser; the corpus hits it exactly
                assert abs(bundled_scorer.score(template) - center) <= 0.05

    def test_matched_words_carry_the_center_valence(self, bundled_scorer,
                                                    bundled_realizer):
        # sentiment exactness holds word-by-word, not just on average
        centers = bin_centers()
        for b in range(BIN_COUNT):
            center = float(centers[b])
            for template in bundled_realizer.bank(b):
                matched = [w for w in _WORDS.findall(template.lower())
                           if w in bundled_scorer]
                assert matched, template
                for word in matched:
                    assert bundled_scorer.valence(word) == center

    def test_bin_scores_strictly_increase(self, bundled_scorer, bundled_realizer):
        scores = [bundled_scorer.score(bundled_realizer.bank(b)[0])
                  for b in range(BIN_COUNT)]
        assert all(a < b for a, b in zip(scores, scores[1:]))

    def test_single_sentence_and_length_floor(self, bundled_realizer):
        for b in range(BIN_COUNT):
            for template in bundled_realizer.bank(b):
                rep = fk_grade(template)
                assert rep.sentences == 1
                assert rep.words >= 15

    def test_uniform_standalone_grade(self, bundled_realizer):
        # every template: 18 words, 36 syllables, one sentence
        expected = 0.39 * 18.0 + 11.8 * (36.0 / 18.0) - 15.59
        for b in range(BIN_COUNT):
            for template in bundled_realizer.bank(b):
                rep = fk_grade(template)
                assert (rep.words, rep.sentences, rep.syllables) == (18, 1, 36)
                assert rep.grade == expected
        assert expected == pytest.approx(15.03, abs=1e-9)

    def test_uniform_grade_composed_with_query(self, bundled_realizer):
        expected = 0.39 * 22.0 + 11.8 * (40.0 / 22.0) - 15.59
        for b in range(BIN_COUNT):
            for template in bundled_realizer.bank(b):
                rep = fk_grade(f"{DEFAULT_QUERY} {template}")
                assert (rep.words, rep.sentences, rep.syllables) == (22, 1, 40)
                assert rep.grade == expected
        assert expected > 2.0
