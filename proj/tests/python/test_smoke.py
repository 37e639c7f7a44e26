import catchup
import pytest


def reference_cases():
    return [
        catchup.make_record(77594, 2015, 1, 2, [8, 8, 8, -1]),
        catchup.make_record(77833, 2015, 1, 3, [8, 8, 8, -1]),
        catchup.make_record(80183, 2015, 1, 1, [4, 6, 7, -1]),
        catchup.make_record(122915, 2017, 1, 1, [1, 7, 7, -1]),
    ]


def test_scan():
    cases = catchup.scan_rescuable(reference_cases(), 4)
    assert [c.case_id for c in cases] == [77594, 77833, 80183, 122915]
    assert all(c.valid for c in cases)
    assert list(cases[2].observed) == [4, 6, 7]


def test_fit_and_predict():
    rows = [catchup.Sample([a, b, c], a) for a in range(1, 10) for b in (1, 5) for c in (2, 7)]
    model = catchup.fit(rows)
    assert model.adjusted_r_squared == pytest.approx(1.0)
    assert catchup.predict(model, [4, 1, 1]) == pytest.approx(4.0)
    with pytest.raises(catchup.DataError):
        catchup.fit(rows[:3])


def test_hybrid_similar_mode():
    train = [catchup.Sample([5, 5, 5], 6 if i < 3 else 9) for i in range(5)]
    cls = catchup.build_class([5, 5, 5], train, catchup.HybridConfig(k=2))
    assert cls.mode == catchup.ClassMode.Similar
    est = catchup.estimate(cls, train)
    assert est.modal_grade == 6
    assert catchup.decide(est, catchup.DecisionRule.MostFrequent) == catchup.PassFail.Pass


def test_confusion_undefined():
    c = catchup.confusion([3, 7, 9, 9], [2, 8.5, 8, 9])
    assert (c.mpf, c.mfp) == (0.5, 0.5)
    assert catchup.confusion([1, 2], [1, 9]).mfp is None


def test_generate_and_rescue():
    cfg = catchup.GenConfig()
    cfg.n_records = 3000
    cfg.years = [2015, 2017]
    cfg.regions = [1, 2, 3]
    cfg.ability_mean = 5.5
    cfg.noise_spread = 0.7
    cfg.seed = 9
    records = catchup.embed_cases(catchup.generate(cfg), reference_cases())
    assert catchup.generate(cfg) == catchup.generate(cfg)
    decisions = catchup.rescue_all(records, 4, catchup.Engine.Regression, 20, 9)
    assert len(decisions) == 4
    assert all(0.0 <= d.grade4p <= 1.0 for d in decisions)
    cohort = catchup.build_cohort(records, 4, year=2015, region=1)
    report = catchup.run_regression_eval(cohort, 5, 1)
    assert report.model == "regression"
    assert len(report.per_rep_adjusted_r2) == 5


def test_split_sizes():
    s = catchup.split(100, catchup.SplitConfig(catchup.SplitMode.Parametric, 0.75), 3)
    assert len(s.train) == 75 and len(s.test) == 25
