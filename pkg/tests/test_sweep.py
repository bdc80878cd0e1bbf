import json
import math

import pytest

from fibercone.sweep import (
    SweepSpec,
    build_ideal,
    enumerate_params,
    process_tuple,
    record_key,
    report_conjecture,
    resume,
    run_sweep,
    summarize,
)


def read_records(path):
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


class TestSpec:
    def test_round_trip(self):
        spec = SweepSpec("symmetric", {"c_max": 6}, degree_bound=20, seed=9)
        assert SweepSpec.from_json(spec.to_json()) == spec

    def test_rejects_unknown_family(self):
        with pytest.raises(ValueError):
            SweepSpec("mystery", {})


class TestEnumeration:
    def test_symmetric_constraints(self):
        spec = SweepSpec("symmetric", {"c_max": 8})
        for p in enumerate_params(spec):
            assert 0 < p["a"] < p["b"] < p["c"] <= 8
            assert math.gcd(p["a"], p["b"], p["c"]) == 1

    def test_ci_constraints(self):
        spec = SweepSpec("ci", {"a_max": 5, "b_max": 5})
        params = enumerate_params(spec)
        assert len(params) == 53
        for p in params:
            assert p["b"] >= p["a"] > p["c"] >= 1
            assert p["b"] < p["d"] < 2 * p["b"]
            assert math.gcd(p["a"], p["c"]) == 1 and math.gcd(p["b"], p["d"]) == 1

    def test_general4_constraints(self):
        spec = SweepSpec("general4", {"max_exponent": 5})
        for p in enumerate_params(spec):
            assert p["a"] > p["c"] > p["e"] > 0
            assert 0 < p["d"] < p["f"] < p["b"]
            I = build_ideal("general4", p)
            assert I.mu == 4

    def test_general4_grid_size(self):
        spec = SweepSpec("general4", {"max_exponent": 10})
        assert len(enumerate_params(spec)) == 14400

    def test_keys_are_unique(self):
        spec = SweepSpec("hypersurface", {"n": 2, "a_max": 4})
        params = enumerate_params(spec)
        keys = {record_key(spec.family, p) for p in params}
        assert len(keys) == len(params)


class TestProcessTuple:
    def test_symmetric_record(self):
        spec = SweepSpec("symmetric", {"c_max": 4}, seed=1)
        rec = process_tuple(spec, {"a": 2, "b": 3, "c": 4})
        assert rec["status"] == "Ok"
        assert rec["case"] == "i"
        assert rec["depth"] == 2 and rec["cm"] is True
        assert rec["mu_i"] == 4 and rec["mu_j"] == 3
        assert rec["certification"].startswith("certified:")

    def test_general4_record(self):
        spec = SweepSpec("general4", {"max_exponent": 4}, seed=1)
        rec = process_tuple(spec, {"a": 3, "c": 2, "d": 1, "e": 1, "f": 2, "b": 3})
        assert rec["status"] == "Ok"
        assert rec["certification"].startswith("oracle:")
        assert rec["depth"] in (1, 2)


class TestRunSweep:
    def test_small_symmetric_grid(self, tmp_path):
        store = str(tmp_path / "store.jsonl")
        spec = SweepSpec("symmetric", {"c_max": 6}, seed=2)
        summary = run_sweep(spec, store, jobs=1)
        assert summary["total"] == len(enumerate_params(spec))
        assert summary["mismatches"] == 0
        assert set(summary["by_depth"]) <= {"1", "2"}
        assert summary["by_status"] == {"Ok": summary["total"]}

    def test_idempotent(self, tmp_path):
        store = str(tmp_path / "store.jsonl")
        spec = SweepSpec("symmetric", {"c_max": 5}, seed=2)
        first = run_sweep(spec, store, jobs=1)
        before = read_records(store)
        second = run_sweep(spec, store, jobs=1)
        assert second["already_done"] == first["total"]
        assert read_records(store) == before

    def test_deterministic_records(self, tmp_path):
        spec = SweepSpec("symmetric", {"c_max": 6}, seed=7)
        stores = []
        for name in ("a.jsonl", "b.jsonl"):
            store = str(tmp_path / name)
            run_sweep(spec, store, jobs=1)
            recs = read_records(store)
            for r in recs:
                r.pop("runtime_millis")
            stores.append(recs)
        assert stores[0] == stores[1]

    def test_parallel_matches_sequential(self, tmp_path):
        spec = SweepSpec("symmetric", {"c_max": 5}, seed=7)
        seq_store = str(tmp_path / "seq.jsonl")
        par_store = str(tmp_path / "par.jsonl")
        run_sweep(spec, seq_store, jobs=1)
        run_sweep(spec, par_store, jobs=2)

        def canon(path):
            recs = read_records(path)
            for r in recs:
                r.pop("runtime_millis")
            return sorted(recs, key=lambda r: r["key"])

        assert canon(seq_store) == canon(par_store)

    def test_symmetric_c12_grid(self, tmp_path):
        # every record certified with depth 1 or 2 on the full c <= 12 grid
        store = str(tmp_path / "store.jsonl")
        spec = SweepSpec("symmetric", {"c_max": 12}, seed=11)
        summary = run_sweep(spec, store, jobs=2)
        assert summary["mismatches"] == 0
        assert summary["by_status"] == {"Ok": summary["total"]}
        assert set(summary["by_depth"]) <= {"1", "2"}

    def test_ci_grid_all_complete_intersections(self, tmp_path):
        store = str(tmp_path / "store.jsonl")
        spec = SweepSpec("ci", {"a_max": 5, "b_max": 5}, seed=11)
        summary = run_sweep(spec, store, jobs=2)
        assert summary["mismatches"] == 0
        for rec in read_records(store):
            assert rec["status"] == "Ok"
            assert rec["mu_j"] == 2 and rec["cm"] is True

    def test_error_record_does_not_abort(self, tmp_path, monkeypatch):
        import fibercone.sweep as sweep_mod

        spec = SweepSpec("symmetric", {"c_max": 5}, seed=2)
        original = sweep_mod.classify_symmetric

        def sabotage(a, b, c):
            if (a, b, c) == (1, 2, 5):
                raise RuntimeError("synthetic failure")
            return original(a, b, c)

        monkeypatch.setattr(sweep_mod, "classify_symmetric", sabotage)
        store = str(tmp_path / "store.jsonl")
        summary = run_sweep(spec, store, jobs=1)
        assert summary["by_status"].get("Error") == 1
        bad = [r for r in read_records(store) if r["status"] == "Error"]
        assert bad[0]["key"] == "symmetric:1,2,5"
        assert "synthetic failure" in bad[0]["detail"]


class TestResume:
    def test_empty_store(self, tmp_path):
        assert resume(str(tmp_path / "missing.jsonl")) == set()

    def test_counts_records(self, tmp_path):
        store = str(tmp_path / "s.jsonl")
        spec = SweepSpec("symmetric", {"c_max": 5}, seed=2)
        run_sweep(spec, store, jobs=1)
        assert len(resume(store)) == len(enumerate_params(spec))

    def test_torn_final_line(self, tmp_path, capfd):
        store = str(tmp_path / "s.jsonl")
        with open(store, "w") as fh:
            fh.write(json.dumps({"key": "k1", "status": "Ok"}) + "\n")
            fh.write(json.dumps({"key": "k2", "status": "Ok"}) + "\n")
            fh.write('{"key": "k3", "stat')
        keys = resume(store)
        assert keys == {"k1", "k2"}
        assert "torn" in capfd.readouterr().err

    def test_interior_corruption_is_fatal(self, tmp_path):
        store = str(tmp_path / "s.jsonl")
        with open(store, "w") as fh:
            fh.write(json.dumps({"key": "k1", "status": "Ok"}) + "\n")
            fh.write("NOT JSON\n")
            fh.write(json.dumps({"key": "k3", "status": "Ok"}) + "\n")
        with pytest.raises(ValueError, match="corrupt interior"):
            resume(store)

    def test_rerun_after_torn_line_truncates(self, tmp_path):
        store = str(tmp_path / "s.jsonl")
        spec = SweepSpec("symmetric", {"c_max": 5}, seed=2)
        run_sweep(spec, store, jobs=1)
        n = len(read_records(store))
        with open(store, "a") as fh:
            fh.write('{"key": "torn')
        summary = run_sweep(spec, store, jobs=1)
        assert summary["already_done"] == n
        assert len(read_records(store)) == n  # torn tail removed, nothing re-added


class TestConjectureReport:
    def test_clean_grid_is_empty(self, tmp_path):
        store = str(tmp_path / "s.jsonl")
        run_sweep(SweepSpec("symmetric", {"c_max": 6}, seed=2), store, jobs=1)
        report = report_conjecture(store)
        assert report["counterexamples"] == []
        assert report["depth_zero"] == []
        assert report["cm_mu_violations"] == []
        assert report["inconclusive"] == []

    def test_five_generator_ideal_listed_not_flagged(self, tmp_path):
        store = str(tmp_path / "s.jsonl")
        with open(store, "w") as fh:
            fh.write(
                json.dumps(
                    {
                        "key": "manual:intro",
                        "status": "Ok",
                        "mu_i": 5,
                        "mu_j": 10,
                        "depth": 0,
                        "cm": False,
                    }
                )
                + "\n"
            )
        report = report_conjecture(store)
        assert len(report["depth_zero"]) == 1
        assert report["depth_zero"][0]["mu_i"] == 5
        assert report["counterexamples"] == []

    def test_synthetic_counterexample_flagged(self, tmp_path):
        store = str(tmp_path / "s.jsonl")
        with open(store, "w") as fh:
            fh.write(
                json.dumps(
                    {
                        "key": "manual:bad",
                        "status": "Ok",
                        "mu_i": 4,
                        "mu_j": 7,
                        "depth": 0,
                        "cm": False,
                    }
                )
                + "\n"
            )
        report = report_conjecture(store)
        assert [e["key"] for e in report["counterexamples"]] == ["manual:bad"]

    def test_cm_mu_violation_flagged(self, tmp_path):
        store = str(tmp_path / "s.jsonl")
        with open(store, "w") as fh:
            fh.write(
                json.dumps(
                    {
                        "key": "manual:odd",
                        "status": "Ok",
                        "mu_i": 4,
                        "mu_j": 5,
                        "depth": 2,
                        "cm": True,
                    }
                )
                + "\n"
            )
        report = report_conjecture(store)
        assert [e["key"] for e in report["cm_mu_violations"]] == ["manual:odd"]


class TestSummarize:
    def test_counts(self):
        records = [
            {"status": "Ok", "case": "i", "depth": 2, "certification": "certified:5"},
            {"status": "Ok", "case": None, "depth": 1, "certification": "oracle:10"},
            {"status": "Inconclusive", "case": None, "depth": None, "certification": None},
        ]
        s = summarize(records)
        assert s["total"] == 3
        assert s["by_status"] == {"Ok": 2, "Inconclusive": 1}
        assert s["by_case"] == {"i": 1, "-": 2}
        assert s["mismatches"] == 0
