"""Exit criteria, one test per criterion, each printing a PASS/FAIL line."""

import json
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.stats import kendalltau

from copula_cda import (
    EstimatorConfig,
    ExperimentSpec,
    augment_domains,
    ci_measure,
    clayton_cdf,
    copula_entropy,
    frank_cdf,
    permutation_pvalues,
    run_experiment1,
    run_experiment2,
    sample_bivariate_gaussian,
    sample_clayton,
    sample_frank,
    transfer_entropy,
)
from copula_cda.cli import cmd_cda, ingest
from copula_cda.experiments import experiment1_dataset

from conftest import ACCEPTANCE_LINES
from oracles import frank_tau, gaussian_cmi

SEEDS = range(10)


def record(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] #{num} {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_01_gaussian_ce_calibration():
    t0 = time.perf_counter()
    parts, ok = [], True
    for rho in (0.3, 0.5, 0.8):
        target = 0.5 * np.log(1 - rho**2)
        est = np.mean([copula_entropy(sample_bivariate_gaussian(2000, rho=rho, seed=s)) for s in SEEDS])
        ok &= abs(est - target) <= 0.05
        parts.append(f"rho={rho}: {est:.4f} vs {target:.4f}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 10
    record(1, "Gaussian CE calibration", ok, "; ".join(parts) + f"; {elapsed:.2f}s")


def test_02_independence_null():
    pair = np.mean([abs(copula_entropy(np.random.default_rng(s).random((1000, 2)))) for s in SEEDS])
    triple = np.mean([abs(ci_measure(*np.random.default_rng(100 + s).random((3, 1000)))) for s in SEEDS])
    ok = pair < 0.05 and triple < 0.05
    record(2, "independence null", ok, f"mean |H_c| = {pair:.4f}, mean |H_ci| = {triple:.4f} (limit 0.05)")


def test_03_monotone_invariance():
    rng = np.random.default_rng(3)
    bad = 0
    for case in range(100):
        n = int(rng.integers(20, 400))
        x = rng.normal(size=(n, 3)) * rng.uniform(0.1, 3)
        fx = np.column_stack([np.exp(x[:, 0]), x[:, 1] ** 3, np.exp(x[:, 2])])
        cfg = EstimatorConfig(k=int(rng.integers(1, 6)), tie_seed=case)
        same = copula_entropy(fx, cfg) == copula_entropy(x, cfg)
        same &= ci_measure(*fx.T, cfg) == ci_measure(*x.T, cfg)
        bad += not same
    record(3, "monotone invariance", bad == 0, f"{100 - bad}/100 cases bit-identical")


def test_04_gaussian_cmi():
    chain = []
    partial = []
    cov = np.array([[2.0, 1.6, 1.0], [1.6, 2.0, 1.0], [1.0, 1.0, 1.0]])
    target, rho_xy_z = gaussian_cmi(cov)
    for s in SEEDS:
        r = np.random.default_rng(400 + s)
        x = r.normal(size=2000)
        z = x + r.normal(size=2000)
        y = z + r.normal(size=2000)
        chain.append(ci_measure(x, y, z))
        partial.append(ci_measure(*r.multivariate_normal(np.zeros(3), cov, 2000).T))
    c, p = np.mean(chain), np.mean(partial)
    ok = abs(c) < 0.05 and abs(p - target) <= 0.08 and abs(rho_xy_z - 0.6) < 1e-12
    record(4, "Gaussian CMI", ok, f"chain {c:.4f}; partial-corr 0.6 triple {p:.4f} vs {target:.4f}")


def test_05_transfer_entropy():
    fwd, rev = [], []
    for s in SEEDS:
        r = np.random.default_rng(500 + s)
        x = r.normal(size=2000)
        y = np.empty(2000)
        y[0] = r.normal()
        y[1:] = x[:-1] + r.normal(size=1999)
        fwd.append(transfer_entropy(x, y, 1))
        rev.append(transfer_entropy(y, x, 1))
    f, b = np.mean(fwd), np.mean(rev)
    target = 0.5 * np.log(2)
    ok = abs(f - target) <= 0.08 and abs(b) <= 0.05
    record(5, "transfer entropy", ok, f"TE(x->y) {f:.4f} vs {target:.4f}; TE(y->x) {b:.4f}")


def test_06_copula_samplers():
    c = sample_clayton(2000, 3.0, seed=6).values
    f = sample_frank(2000, 5.0, seed=6).values
    tc = kendalltau(c[:, 0], c[:, 1])[0]
    tf = kendalltau(f[:, 0], f[:, 1])[0]
    oracle = frank_tau(5.0)
    u = np.linspace(0, 1, 101)
    boundary = 0.0
    for th in (0.3, 3.0):
        boundary = max(boundary, np.max(np.abs(clayton_cdf(u, 1.0, th) - u)), abs(clayton_cdf(1.0, 1.0, th) - 1))
    for th in (0.5, 5.0):
        boundary = max(boundary, np.max(np.abs(frank_cdf(u, 1.0, th) - u)), abs(frank_cdf(1.0, 1.0, th) - 1))
    ok = abs(tc - 0.6) <= 0.05 and abs(tf - oracle) <= 0.05 and boundary <= 1e-12
    record(6, "copula samplers", ok, f"Clayton tau {tc:.4f} vs 0.6; Frank tau {tf:.4f} vs {oracle:.4f}; boundary err {boundary:.1e}")


def _experiment_criterion(num, title, runner, exp_id):
    t0 = time.perf_counter()
    sep, x3 = 0, []
    for s in SEEDS:
        h = runner(ExperimentSpec(exp_id, s, EstimatorConfig(tie_seed=s))).h_ci
        sep += h["x1"] > h["x3"] and h["x2"] > h["x3"]
        x3.append(h["x3"])
    elapsed = time.perf_counter() - t0
    m = np.mean(np.abs(x3))
    ok = sep >= 9 and m < 0.05 and elapsed < 30
    record(num, title, ok, f"separated in {sep}/10 seeds; mean |h_ci(x3)| {m:.4f}; {elapsed:.2f}s")


def test_07_experiment1():
    _experiment_criterion(7, "experiment 1 reproduction", run_experiment1, "exp1")


def test_08_experiment2():
    _experiment_criterion(8, "experiment 2 reproduction", run_experiment2, "exp2")


def test_09_permutation_calibration():
    hits = 0
    for run in range(20):
        r = np.random.default_rng(900 + run)
        X = r.normal(size=(500, 5))
        y = r.normal(size=500)
        ds = augment_domains([(X[:250], y[:250]), (X[250:], y[250:])])
        rep = permutation_pvalues(ds, EstimatorConfig(tie_seed=run), B=200, perm_seed=run)
        hits += sum(p <= 0.05 for p in rep.p_values.values())
    fpr = hits / 100
    power = sum(
        run_experiment1(ExperimentSpec("exp1", s, EstimatorConfig(tie_seed=s), B=200))["x1"].p_value <= 0.05
        for s in SEEDS
    )
    ok = fpr <= 0.10 and power >= 8
    record(9, "permutation calibration", ok, f"false-positive rate {fpr:.2f}; x1 significant in {power}/10")


def test_10_cli(tmp_path):
    def cli(*argv):
        return subprocess.run([sys.executable, "-m", "copula_cda.cli", *argv], capture_output=True, text=True)

    a, b = cli("sim", "exp1", "--seed", "1"), cli("sim", "exp1", "--seed", "1")
    identical = a.returncode == 0 and a.stdout == b.stdout

    ds = experiment1_dataset(1)
    path = tmp_path / "exp1.csv"
    rows = np.column_stack([ds.features.values, ds.outcome, ds.context])
    path.write_text("x1,x2,x3,y,domain\n" + "".join(",".join(repr(float(v)) for v in r) + "\n" for r in rows))
    table, _ = ingest(path)
    cfg = EstimatorConfig(tie_seed=1)
    report, _ = cmd_cda(table, "domain", "y", cfg)
    same = report.h_ci == run_experiment1(ExperimentSpec("exp1", 1, cfg)).h_ci
    doc = json.loads(cli("cda", "--input", str(path), "--context", "domain", "--outcome", "y", "--seed", "1").stdout)
    same &= {r["name"]: r["h_ci"] for r in doc["results"]} == report.h_ci

    ragged = tmp_path / "ragged.csv"
    ragged.write_text("a,b\n1,2\n3\n")
    const = tmp_path / "const.csv"
    const.write_text("a,y,c\n" + "".join(f"{i},{2 * i},1\n" for i in range(10)))
    codes = {
        "usage": cli("ce", "--input", str(path), "--cols", "x1,nope").returncode == 1,
        "parse": cli("ce", "--input", str(ragged), "--cols", "a,b").returncode == 2,
        "data": cli("cda", "--input", str(const), "--context", "c", "--outcome", "y").returncode == 2,
        "config": cli("ce", "--input", str(path), "--cols", "x1,x2", "--k", "500").returncode == 3,
        "ok": cli("ce", "--input", str(path), "--cols", "x1,x2").returncode == 0,
    }
    ok = identical and same and all(codes.values())
    record(10, "CLI equivalence and determinism", ok, f"byte-identical={identical}; cda==exp1={same}; exit codes {codes}")
