"""Smoke tests for the python module: every exposed operation runs once."""

import os
import sys

import streamfarm

DATA_DIR = os.environ.get("STREAMFARM_TEST_DATA_DIR")
assert DATA_DIR, "STREAMFARM_TEST_DATA_DIR must point at the fixture directory"


def test_sw_score():
    # M/M=7 K/K=6 T/T=5 on the BLOSUM50 diagonal.
    assert streamfarm.sw_score("MKT", "MKT") == 18
    assert streamfarm.sw_score("A", "W") == 0
    assert streamfarm.sw_score("", "MKT") == 0
    # Lax gaps can only help.
    strict = streamfarm.sw_score("ACDEFG", "ACDFG", gap_open=10, gap_extend=2)
    lax = streamfarm.sw_score("ACDEFG", "ACDFG", gap_open=5, gap_extend=2)
    assert lax > strict > 0


def test_gcups():
    assert streamfarm.gcups(1000.0, 1e6, 1.0) == 1.0
    assert streamfarm.gcups(1000.0, 1e9, 1.0) == 1000.0
    try:
        streamfarm.gcups(1.0, 1.0, 0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("gcups(seconds=0) should raise")


def test_parse_fasta():
    records = streamfarm.parse_fasta(os.path.join(DATA_DIR, "db_small.fasta"))
    assert len(records) == 3
    name, body = records[0]
    assert name == "small0"
    assert len(body) == 48
    assert body.isalpha() and body.isupper()


def test_calibrate_spin():
    iters = streamfarm.calibrate_spin(50.0)
    assert iters > 0


def test_run_bench():
    r = streamfarm.run_bench(tc_micros=1.0, n_workers=2, n_tasks=2000,
                             engine="lockfree", repetitions=2, channel_capacity=64)
    assert r["engine"] == "lockfree"
    assert r["n_tasks"] == 2000
    assert r["median_seconds"] > 0
    assert r["speedup"] > 0
    r = streamfarm.run_bench(tc_micros=1.0, n_workers=1, n_tasks=1000, engine="mutex",
                             repetitions=1, channel_capacity=64)
    assert r["engine"] == "mutex"


def test_run_swfarm():
    r = streamfarm.run_swfarm(os.path.join(DATA_DIR, "query.fasta"),
                              os.path.join(DATA_DIR, "db_small.fasta"), n_workers=2)
    assert r["n_results"] == 3
    lines = [l for l in r["output"].splitlines() if l and not l.startswith("#")]
    assert len(lines) == 3
    names = [l.split("\t")[0] for l in lines]
    assert names == ["small0", "small1", "small2"]
    for line in lines:
        int(line.split("\t")[1])  # every score parses as an integer
    assert r["cells"] == 144 * sum(len(b) for _, b in
                                   streamfarm.parse_fasta(os.path.join(DATA_DIR,
                                                                       "db_small.fasta")))
    assert r["gcups"] > 0


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
