"""Synthetic planted-partition generator."""

import dataclasses
import json
import math

import numpy as np
import pytest

from chamberlens import style
from chamberlens.community import louvain
from chamberlens.concordance import ari
from chamberlens.errors import FormatError, ValidationError
from chamberlens.graph import build_reply_graph
from chamberlens.synth import (
    DEFAULT_STYLE_MEANS,
    SynthSpec,
    generate,
    read_truth_json,
    spec_from_json,
    write_truth_json,
)

from conftest import connected_components


@pytest.fixture(scope="module")
def default_result():
    return generate(SynthSpec())


def test_generation_is_deterministic():
    spec = SynthSpec(k=2, sizes=(8, 8), seed=3,
                     style_means=DEFAULT_STYLE_MEANS[:2])
    a = generate(spec)
    b = generate(spec)
    assert a.records == b.records
    assert a.vectors == b.vectors
    assert a.community_of_user == b.community_of_user


def test_different_seeds_differ():
    a = generate(SynthSpec(k=2, sizes=(8, 8), seed=3,
                     style_means=DEFAULT_STYLE_MEANS[:2]))
    b = generate(SynthSpec(k=2, sizes=(8, 8), seed=4,
                          style_means=DEFAULT_STYLE_MEANS[:2]))
    assert a.records != b.records


def test_zero_crosstalk_yields_one_component_per_block():
    spec = SynthSpec(k=2, sizes=(20, 20), p_in=0.5, p_out=0.0, seed=5,
                     style_means=DEFAULT_STYLE_MEANS[:2])
    res = generate(spec)
    g = build_reply_graph(res.records)
    comps = connected_components(g)
    assert len(comps) == 2
    for comp in comps:
        blocks = {res.community_of_user[g.node_ids[i]] for i in comp}
        assert len(blocks) == 1


def test_zero_noise_reproduces_planted_means_exactly():
    spec = SynthSpec(k=2, sizes=(4, 4), style_noise=0.0, seed=9,
                     style_means=DEFAULT_STYLE_MEANS[:2])
    res = generate(spec)
    for v in res.vectors:
        c = res.community_of_user[
            next(r.user_id for r in res.records if r.tweet_id == v.tweet_id)]
        planted = spec.style_means[c]
        assert (v.negativity, v.neutrality, v.positivity, v.subjectivity) \
            == planted[:4]
        assert v.fallacy_dist == planted[4:]


def test_edge_counts_track_the_planted_probabilities(default_result):
    res = default_result
    g = build_reply_graph(res.records)
    intra = inter = 0
    for i, j, _w in g.edges:
        if res.community_of_user[g.node_ids[i]] == \
                res.community_of_user[g.node_ids[j]]:
            intra += 1
        else:
            inter += 1
    # 6 blocks of 50: C(50,2)*6 = 7350 intra pairs, 50*50*15 = 37500 inter
    n_intra, n_inter = 7350, 37500
    sd_intra = math.sqrt(n_intra * 0.2 * 0.8)
    sd_inter = math.sqrt(n_inter * 0.002 * 0.998)
    assert abs(intra - n_intra * 0.2) <= 3.0 * sd_intra
    assert abs(inter - n_inter * 0.002) <= 3.0 * sd_inter


def test_every_reply_stays_inside_the_user_set(default_result):
    users = set(default_result.community_of_user)
    for r in default_result.records:
        assert r.user_id in users
        if r.reply_to_user_id is not None:
            assert r.reply_to_user_id in users
            assert r.reply_to_user_id != r.user_id


def test_generated_features_import_cleanly(tmp_path, default_result):
    path = tmp_path / "features.jsonl"
    style.write_features_jsonl(default_result.vectors, path)
    imported = style.import_features(path)
    assert imported.rejected == 0
    assert len(imported.vectors) == len(default_result.vectors)


def test_louvain_recovers_the_planted_blocks(default_result):
    res = default_result
    g = build_reply_graph(res.records)
    p = louvain(g, seed=0)
    truth = [res.community_of_user[u] for u in g.node_ids]
    assert ari(list(p.assignment), truth) >= 0.95


def test_spec_validation_errors():
    with pytest.raises(ValidationError):
        SynthSpec(k=0, sizes=(), style_means=()).validate()
    with pytest.raises(ValidationError):
        SynthSpec(k=2, sizes=(5,), style_means=DEFAULT_STYLE_MEANS[:2]).validate()
    with pytest.raises(ValidationError):
        SynthSpec(p_in=1.5).validate()
    with pytest.raises(ValidationError):
        SynthSpec(p_out=-0.1).validate()
    with pytest.raises(ValidationError):
        SynthSpec(weight_mean=0.5).validate()
    with pytest.raises(ValidationError):
        SynthSpec(tweets_per_user=0).validate()
    with pytest.raises(ValidationError):
        SynthSpec(style_noise=-0.01).validate()
    bad_row = (0.5, 0.4, 0.3) + DEFAULT_STYLE_MEANS[0][3:]  # polarity sums 1.2
    with pytest.raises(ValidationError):
        SynthSpec(style_means=(bad_row,) + DEFAULT_STYLE_MEANS[1:]).validate()
    short_row = DEFAULT_STYLE_MEANS[0][:10]
    with pytest.raises(ValidationError):
        SynthSpec(style_means=(short_row,) + DEFAULT_STYLE_MEANS[1:]).validate()


def test_inverted_probabilities_only_warn(caplog):
    spec = SynthSpec(p_in=0.01, p_out=0.02)
    with caplog.at_level("WARNING", logger="chamberlens.synth"):
        spec.validate()
    assert any("p_in" in rec.message for rec in caplog.records)


def test_spec_json_round_trip(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({
        "k": 2, "sizes": [6, 7], "p_in": 0.4, "seed": 12,
        "style_means": [list(r) for r in DEFAULT_STYLE_MEANS[:2]],
    }), encoding="utf-8")
    spec = spec_from_json(path)
    assert spec.k == 2
    assert spec.sizes == (6, 7)
    assert spec.p_in == 0.4
    assert spec.p_out == SynthSpec().p_out  # default preserved
    assert spec.style_means == DEFAULT_STYLE_MEANS[:2]


def test_spec_json_rejects_unknown_keys(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text('{"k": 2, "block_sizes": [5, 5]}', encoding="utf-8")
    with pytest.raises(FormatError):
        spec_from_json(path)


def test_spec_json_rejects_garbage(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text("not json", encoding="utf-8")
    with pytest.raises(FormatError):
        spec_from_json(path)
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(FormatError):
        spec_from_json(path)


def test_truth_json_round_trip(tmp_path):
    res = generate(SynthSpec(k=2, sizes=(3, 3), seed=8,
                             style_means=DEFAULT_STYLE_MEANS[:2]))
    path = tmp_path / "truth.json"
    write_truth_json(res, path)
    community, means = read_truth_json(path)
    assert community == res.community_of_user
    assert means == [list(r) for r in res.spec.style_means]
    path.write_text('{"community_of_user": {}}', encoding="utf-8")
    with pytest.raises(FormatError):
        read_truth_json(path)


def test_lexicon_mode_texts_carry_the_style_signal():
    # block 0 planted strongly negative, block 2 strongly positive
    spec = SynthSpec(
        k=2, sizes=(15, 15), seed=21, lexicon_mode=True,
        style_means=(DEFAULT_STYLE_MEANS[0], DEFAULT_STYLE_MEANS[2]))
    res = generate(spec)
    neg_scores: dict[int, list[float]] = {0: [], 1: []}
    pos_scores: dict[int, list[float]] = {0: [], 1: []}
    for r in res.records:
        s = style.score_baseline(r.text)
        c = res.community_of_user[r.user_id]
        neg_scores[c].append(s.negativity)
        pos_scores[c].append(s.positivity)
    assert np.mean(neg_scores[0]) > np.mean(neg_scores[1])
    assert np.mean(pos_scores[1]) > np.mean(pos_scores[0])


def test_result_fields_are_immutable():
    res = generate(SynthSpec(k=2, sizes=(3, 3), seed=1,
                             style_means=DEFAULT_STYLE_MEANS[:2]))
    assert isinstance(res.records, tuple)
    assert isinstance(res.vectors, tuple)
    with pytest.raises(dataclasses.FrozenInstanceError):
        res.records = ()
