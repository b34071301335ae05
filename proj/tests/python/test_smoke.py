import os
import pathlib
import shutil

import pytest

import scimine

FIXTURES = pathlib.Path(os.environ.get("SCIMINE_FIXTURES", pathlib.Path(__file__).parents[1] / "fixtures"))
IPB = "bibliotecadigital-ipb-pt"


def ipb_record():
    html = (FIXTURES / "pipeline" / "repos" / IPB / "14638.html").read_text(encoding="utf-8")
    config = (FIXTURES / "pipeline" / "configs" / f"{IPB}.json").read_text(encoding="utf-8")
    return scimine.extract_record(html, IPB, 14638, config)


def test_extract_and_classify():
    record, warnings = ipb_record()
    assert record["html_id"] == 14638
    assert set(record["abstracts"]) == {"en", "pt"}
    domain, counts = scimine.classify_record(record)
    assert domain == "energy"
    assert counts["energy"] == 6
    assert counts["cancer"] == 0


def test_extract_rejects_bad_config():
    with pytest.raises(scimine.ConfigError):
        scimine.extract_record("<html></html>", IPB, 1, "{}")


def test_segment_and_identify():
    parts = scimine.split_sentences("O Dr. Silva chegou. Depois saiu.", "pt")
    assert parts == ["O Dr. Silva chegou.", "Depois saiu."]
    lang, conf = scimine.identify_language(
        "Esta investigação pretende analisar a expansão do setor económico relacionado com as energias."
    )
    assert lang == "pt"
    assert conf > 0.5
    assert scimine.identify_language("ok") == ("other", 0.0)


def test_embed_is_unit_length():
    v = scimine.embed("Energy systems.")
    assert len(v) == 256
    assert sum(x * x for x in v) == pytest.approx(1.0)
    assert v == scimine.embed("  energy   SYSTEMS. ")


def test_mine_filter_dedup():
    source = ["Renewable energy policy in Portugal.", "The grid needs storage capacity."]
    target = ["Renewable energy policy in Portugal!", "The grid needs storage capacity!"]
    pairs = scimine.mine_pairs(source, target, target_lang="pt", k=1, threshold=0.9)
    assert [(p["source_text"], p["target_text"]) for p in pairs] == list(zip(source, target))
    assert all(p["score"] >= 0.9 for p in pairs)

    p = dict(pairs[0], target_text=pairs[0]["source_text"])
    assert scimine.apply_filters(p) == "identical"
    assert scimine.deduplicate(pairs + pairs) == pairs


def test_metrics():
    hyps = (FIXTURES / "metrics" / "hyp.txt").read_text(encoding="utf-8").splitlines()
    refs = (FIXTURES / "metrics" / "ref.txt").read_text(encoding="utf-8").splitlines()
    assert scimine.bleu(hyps, refs) == pytest.approx(41.5601870069, abs=0.01)
    assert scimine.chrf2pp(hyps, refs) == pytest.approx(64.5337541395, abs=0.01)
    assert scimine.bleu(refs, refs) == 100.0
    r = scimine.score("chrf2pp", hyps, refs)
    assert r["text"].startswith("chrF2++ = 64.5 ")
    assert "nc:6|nw:2|space:no" in r["signature"]


def test_pipeline_run(tmp_path):
    for name in ("repos", "configs"):
        shutil.copytree(FIXTURES / "pipeline" / name, tmp_path / name)
    shutil.copy(FIXTURES / "pipeline" / "pipeline.json", tmp_path / "pipeline.json")
    config = tmp_path / "pipeline.json"
    counters, _ = scimine.run_stage("extract", config)
    assert counters["records"] == 33
    for stage in ("classify", "mine", "filter", "benchmark"):
        scimine.run_stage(stage, config)
    stats = scimine.corpus_stats(config)
    assert stats
    assert (tmp_path / "out" / "benchmark" / "energy.en-pt" / "test.src").exists()
    with pytest.raises(scimine.ConfigError):
        scimine.run_stage("translate", config)
