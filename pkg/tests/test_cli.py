from __future__ import annotations

import json

from refsum.cli import main

FIXTURE_ARGS = ["--taxonomy", "tests/data/fixture.tax",
                "--provider", "mock", "--counts", "tests/data/fixture20_counts.json",
                "--paper-authors", "Alice Novak and Robert Chen",
                "--paper-title", "Adaptive Retrieval for Scholarly Search"]


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_summarize_refset_exit_zero(capsys, data_dir):
    code, out, err = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                          *FIXTURE_ARGS)
    assert code == 0
    assert "This paper cites 20 references." in out
    assert "citation counts: 20 looked up" in err


def test_summarize_matches_golden(capsys, data_dir):
    code, out, _ = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        *FIXTURE_ARGS)
    assert code == 0
    assert out == (data_dir / "golden" / "refset_full.txt").read_text()


def test_offline_matches_golden(capsys, data_dir):
    code, out, _ = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        "--taxonomy", str(data_dir / "fixture.tax"),
                        "--provider", "off",
                        "--paper-authors", "Alice Novak and Robert Chen")
    assert code == 0
    assert out == (data_dir / "golden" / "refset_offline.txt").read_text()


def test_emit_profile_has_no_prose(capsys, data_dir):
    code, out, _ = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        *FIXTURE_ARGS, "--emit", "profile")
    assert code == 0
    assert out.startswith("total\t20\n")
    assert "Most references" not in out


def test_emit_plan(capsys, data_dir):
    code, out, _ = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        *FIXTURE_ARGS, "--emit", "plan")
    assert code == 0
    assert out.startswith("plan\trefset\n")
    assert "paragraph\tauthors" in out


def test_unreadable_path_exit_one(capsys, tmp_path):
    missing = tmp_path / "missing.bib"
    code, out, err = _run(capsys, "summarize", str(missing))
    assert code == 1
    assert str(missing) in err


def test_empty_reference_list_exit_one(capsys, tmp_path):
    empty = tmp_path / "empty.bib"
    empty.write_text("% nothing here\n")
    code, _, err = _run(capsys, "summarize", str(empty))
    assert code == 1


def test_config_error_exit_two(capsys, data_dir):
    code, _, err = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        "--provider", "mock")
    assert code == 2
    assert "configuration error" in err


def test_planning_error_exit_three(capsys, data_dir):
    # prodset without any citation counts cannot report the dominating shape
    code, _, err = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        "--provider", "off", "--algo", "prodset")
    assert code == 3
    assert "dominating shape" in err


def test_realization_error_exit_three(capsys, data_dir, tmp_path):
    pack = tmp_path / "broken.pack"
    pack.write_text("[settings]\nnoun = references\n")
    code, _, err = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        *FIXTURE_ARGS, "--templates", str(pack))
    assert code == 3


def test_malformed_corpus_warns_but_succeeds(capsys, data_dir):
    code, out, err = _run(capsys, "summarize", str(data_dir / "malformed.bib"),
                          "--provider", "off")
    assert code == 0
    assert err.count("error (") == 1
    assert "good5" in err


def test_strict_mode_fails_on_parse_error(capsys, data_dir):
    code, _, err = _run(capsys, "summarize", str(data_dir / "malformed.bib"),
                        "--provider", "off", "--strict")
    assert code == 1
    assert "good5" in err


def test_compare_produces_both_labelled_summaries(capsys, data_dir):
    code, out, _ = _run(capsys, "compare", str(data_dir / "fixture43.bib"),
                        "--taxonomy", str(data_dir / "fixture.tax"),
                        "--provider", "mock",
                        "--counts", str(data_dir / "fixture43_counts.json"))
    assert code == 0
    assert out.startswith("[refset]\n")
    assert "\n[prodset]\n" in out
    assert out.count("43 references") >= 2


def test_jsonl_input(capsys, tmp_path):
    rows = [
        {"id": "a", "title": "A", "venue_type": "journal", "year": 2001,
         "citation_count": 4, "authors": ["Ann Ash"], "self_citation": False},
        {"id": "b", "title": "B", "venue_type": "proceedings", "year": 2005,
         "citation_count": 9, "authors": ["Ben Birch"], "self_citation": True},
    ]
    path = tmp_path / "refs.jsonl"
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    code, out, _ = _run(capsys, "summarize", str(path), "--provider", "off")
    assert code == 0
    assert "This paper cites 2 references." in out
    assert "50% are self-citations" in out


def test_config_file_with_flag_override(capsys, data_dir, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({
        "taxonomy": str(data_dir / "fixture.tax"),
        "provider": "mock",
        "counts": str(data_dir / "fixture20_counts.json"),
        "paper_authors": "Alice Novak and Robert Chen",
        "k": 3,
    }))
    code, out, _ = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        "--config", str(config))
    assert code == 0
    assert "The 3 authors with the highest citation counts" in out
    # flags beat the file
    code, out, _ = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        "--config", str(config), "--k", "2")
    assert "The 2 authors with the highest citation counts" in out


def test_config_file_unknown_key_exit_two(capsys, data_dir, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"quantifer_most": 0.4}))
    code, _, err = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        "--config", str(config))
    assert code == 2
    assert "unknown keys" in err


def test_cache_dir_env_override(capsys, data_dir, tmp_path, monkeypatch):
    monkeypatch.setenv("REFSUM_CACHE_DIR", str(tmp_path))
    code, _, _ = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                      *FIXTURE_ARGS)
    assert code == 0
    assert (tmp_path / "citations.tsv").exists()


def test_enrich_warms_cache_only(capsys, data_dir, tmp_path):
    code, out, err = _run(capsys, "enrich", str(data_dir / "fixture20.bib"),
                          "--provider", "mock",
                          "--counts", str(data_dir / "fixture20_counts.json"),
                          "--cache-dir", str(tmp_path))
    assert code == 0
    assert out == ""
    assert "16 from provider" in err
    assert (tmp_path / "citations.tsv").exists()
    # second pass is all cache hits
    code, _, err = _run(capsys, "enrich", str(data_dir / "fixture20.bib"),
                        "--provider", "mock",
                        "--counts", str(data_dir / "fixture20_counts.json"),
                        "--cache-dir", str(tmp_path))
    assert "16 from cache" in err


def test_enrich_requires_provider_and_cache(capsys, data_dir):
    code, _, _ = _run(capsys, "enrich", str(data_dir / "fixture20.bib"))
    assert code == 2


def test_no_counts_flag_hides_numbers(capsys, data_dir):
    code, out, _ = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        *FIXTURE_ARGS, "--no-counts")
    assert code == 0
    assert "citations)" not in out
    assert "The 7 authors with the highest citation counts" in out


def test_quantifier_thresholds_from_config_file(capsys, data_dir, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"quantifier_most": 0.8, "quantifier_large": 0.5}))
    code, out, _ = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        "--config", str(config), "--provider", "off",
                        "--taxonomy", str(data_dir / "fixture.tax"))
    assert code == 0
    # 55% no longer clears the raised "most" bar
    assert "A large proportion of references (55%) is from proceedings." in out


def test_emit_profile_prodset(capsys, data_dir):
    code, out, _ = _run(capsys, "summarize", str(data_dir / "fixture20.bib"),
                        *FIXTURE_ARGS, "--algo", "prodset", "--emit", "profile")
    assert code == 0
    assert "\nshape\tcitation_count\t" in out
    assert "\nimportance\t" in out
    assert "\ncomparison\t" in out


def test_malformed_jsonl_exit_one(capsys, tmp_path):
    path = tmp_path / "refs.jsonl"
    path.write_text('{"id": "a", "title": "A"}\nnot json at all\n')
    code, _, err = _run(capsys, "summarize", str(path), "--provider", "off")
    assert code == 1
    assert "line 2" in err
