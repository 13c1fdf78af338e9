import json
import subprocess
import sys
from pathlib import Path

import pytest

from ngram_cluster import build_context_index, load_corpus
from ngram_cluster.cli import main
from ngram_cluster.context import dumps_index, loads_index
from ngram_cluster.synthetic import synthetic_text

GOLDEN = Path(__file__).parent / "data" / "compare_golden.jsonl"


@pytest.fixture
def text_file(tmp_path, phrases_text):
    p = tmp_path / "phrases.txt"
    p.write_text(phrases_text, encoding="utf-8")
    return p


@pytest.fixture
def corpus_file(tmp_path, text_file):
    out = tmp_path / "c"
    assert main(["corpus", str(text_file), "--out", str(out)]) == 0
    return out / "corpus.txt"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_corpus_command(capsys, text_file, corpus_file):
    header = corpus_file.read_text(encoding="utf-8").split("\n")[0].split(" ")
    assert header[:4] == ["CORPUS", "v1", "10", "16"]
    code, out, _ = run(capsys, "corpus", text_file)
    assert code == 0 and out == corpus_file.read_text(encoding="utf-8")


def test_corpus_missing_file(capsys, tmp_path):
    missing = tmp_path / "nope.txt"
    code, _, err = run(capsys, "corpus", missing)
    assert code == 2 and str(missing) in err


def test_corpus_empty_file(capsys, tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_bytes(b"")
    code, out, _ = run(capsys, "corpus", empty)
    assert code == 0
    assert out.startswith("CORPUS v1 0 0 ") and out.count("\n") == 1


def test_corpus_bad_encoding(capsys, tmp_path, text_file):
    bad = tmp_path / "bad.txt"
    bad.write_bytes(b"ok \xe0\x80 no")
    code, _, err = run(capsys, "corpus", text_file, bad)
    assert code == 2
    assert str(bad) in err and "byte offset 3" in err


def test_index_command(capsys, tmp_path, corpus_file):
    code, out, _ = run(capsys, "index", corpus_file, "--n", 3)
    assert code == 0
    corpus = load_corpus(corpus_file)
    idx = loads_index(out, corpus)
    age = corpus.id_of("আগে")
    assert idx.preceding[age].total == 3 and idx.following[age].total == 3
    assert idx == build_context_index(corpus, 3)
    assert out == dumps_index(build_context_index(corpus, 3))
    assert run(capsys, "index", corpus_file, "--n", 3, "--out", tmp_path / "i")[0] == 0
    assert (tmp_path / "i" / "index.n3.txt").read_text(encoding="utf-8") == out


@pytest.mark.parametrize("n", [0, 17])
def test_index_bad_window(capsys, corpus_file, n):
    code, _, err = run(capsys, "index", corpus_file, "--n", n)
    assert code == 1 and "window size" in err


def test_index_bad_dump(capsys, tmp_path):
    broken = tmp_path / "broken.txt"
    broken.write_text("CORPUS v1 2 0 abc\n0\ta\n", encoding="utf-8")
    code, _, err = run(capsys, "index", broken)
    assert code == 2 and "line" in err


def test_cluster_phrases(capsys, tmp_path, corpus_file):
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "cluster", corpus_file, "--n", 3, "--threshold", "0.20", "--out", out_dir, "--pairs")
    assert code == 0
    assert out == "cluster_id\tword\n0\tআগে\n0\tপরে\n"
    assert (out_dir / "clusters.tsv").read_text(encoding="utf-8") == out
    record = json.loads((out_dir / "stats.jsonl").read_text(encoding="utf-8"))
    assert record == {
        "n": 3, "threshold": 0.2, "clusters": 1, "edges": 1,
        "clustered_words": 2, "max_cluster_size": 2, "histogram": {"2": 1},
    }
    pairs = (out_dir / "pairs.tsv").read_text(encoding="utf-8").splitlines()
    assert pairs[1] == "আগে\tপরে\t2\t6\t2\t6\t0.3333\t0.3333"


def test_cluster_high_threshold(capsys, corpus_file):
    code, out, _ = run(capsys, "cluster", corpus_file, "--threshold", "0.49")
    assert code == 0 and out == "cluster_id\tword\n"


@pytest.mark.parametrize("t", ["0.7", "0", "half"])
def test_cluster_bad_threshold(capsys, corpus_file, t):
    code, _, err = run(capsys, "cluster", corpus_file, "--threshold", t)
    assert code == 1 and "threshold" in err


def test_cluster_with_index_and_naive_check(capsys, tmp_path, corpus_file):
    run(capsys, "index", corpus_file, "--n", 3, "--out", tmp_path / "i")
    index_file = tmp_path / "i" / "index.n3.txt"
    code, plain, _ = run(capsys, "cluster", corpus_file, "--index", index_file)
    assert code == 0
    code, checked, _ = run(capsys, "cluster", corpus_file, "--index", index_file, "--naive-check")
    assert code == 0 and checked == plain
    code, _, err = run(capsys, "cluster", corpus_file, "--index", index_file, "--n", 3)
    assert code == 1


def test_cluster_index_from_other_corpus(capsys, tmp_path, corpus_file):
    other = tmp_path / "other.txt"
    other.write_text("x y z।", encoding="utf-8")
    run(capsys, "corpus", other, "--out", tmp_path / "o")
    run(capsys, "index", tmp_path / "o" / "corpus.txt", "--out", tmp_path / "o")
    code, _, err = run(capsys, "cluster", corpus_file, "--index", tmp_path / "o" / "index.n3.txt")
    assert code == 2 and "digest" in err


def test_cluster_report_format(capsys, corpus_file):
    code, out, _ = run(capsys, "cluster", corpus_file, "--format", "report")
    assert code == 0
    assert out.splitlines()[1].split() == ["3", "0.2", "1", "1", "2", "2", "2:1"]


def test_naive_check_rejects_ceiling(capsys, corpus_file):
    code, _, _ = run(capsys, "cluster", corpus_file, "--naive-check", "--ceiling", "5")
    assert code == 1


@pytest.fixture
def synthetic_corpus_file(tmp_path):
    src = tmp_path / "synthetic.txt"
    src.write_text(synthetic_text(1234, tokens=5000, vocab_size=300, classes=40), encoding="utf-8")
    assert main(["corpus", str(src), "--out", str(tmp_path / "s")]) == 0
    return tmp_path / "s" / "corpus.txt"


def test_compare_golden(capsys, tmp_path, synthetic_corpus_file):
    out_dir = tmp_path / "cmp"
    code, out, _ = run(capsys, "compare", synthetic_corpus_file, "--n", "3,4,5", "--threshold", "0.20", "--out", out_dir)
    assert code == 0
    assert (out_dir / "report.jsonl").read_bytes() == GOLDEN.read_bytes()
    assert out == (out_dir / "report.txt").read_text(encoding="utf-8")


def test_compare_phrases(capsys, corpus_file):
    code, out, _ = run(capsys, "compare", corpus_file, "--n", "3", "--format", "tsv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t") == ["n", "threshold", "clusters", "edges", "clustered_words", "max_cluster_size", "histogram"]
    assert lines[1].split("\t")[:3] == ["3", "0.2", "1"] and len(lines) == 2


@pytest.mark.parametrize("ns", ["", ",", "3,x", "0,3"])
def test_compare_bad_ns(capsys, corpus_file, ns):
    code, _, _ = run(capsys, "compare", corpus_file, "--n", ns)
    assert code == 1


def test_run_command_and_idempotency(capsys, tmp_path, text_file):
    outputs = []
    for name in ("r1", "r2"):
        code, out, _ = run(capsys, "run", text_file, "--out", tmp_path / name, "--threads", 2)
        assert code == 0
        files = sorted(p.name for p in (tmp_path / name).iterdir())
        assert files == ["clusters.tsv", "corpus.txt", "index.n3.txt", "stats.jsonl", "stats.txt"]
        outputs.append({f: (tmp_path / name / f).read_bytes() for f in files})
    assert outputs[0] == outputs[1]
    assert b"\r" not in b"".join(outputs[0].values())


def test_run_requires_out(capsys, text_file):
    assert run(capsys, "run", text_file)[0] == 1


def test_unknown_subcommand_is_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 1


def test_module_entry_point(text_file):
    proc = subprocess.run(
        [sys.executable, "-m", "ngram_cluster", "run", str(text_file), "--out", str(text_file.parent / "m"), "--format", "report"],
        capture_output=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert b"clustered_words" in proc.stdout
