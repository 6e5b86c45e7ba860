import numpy as np
import pytest

from mesotext.features import DatasetMatrix
from mesotext.learn import evaluation as ev
from mesotext.learn.baseline import frequent_words_features
from mesotext.learn.evaluation import loocv, make_trainer, pairwise_matrix


def separable(n_per=6, authors=("A", "B", "C")):
    rng = np.random.default_rng(0)
    # centres on simplex vertices so every class is separable from the rest
    X = np.vstack([rng.normal(loc=10 * np.eye(3)[k], scale=0.3, size=(n_per, 3)) for k in range(len(authors))])
    y = np.repeat(authors, n_per)
    return X, y


@pytest.mark.parametrize("kind", ["svm", "rf"])
def test_separable_is_perfect(kind):
    X, y = separable()
    rep = loocv(X, y, make_trainer(kind, seed=0))
    assert rep.accuracy == 1.0
    assert rep.confusion.sum() == len(y)


class Recorder:
    """Trainer that remembers the standardisation it sees and predicts a constant."""

    def __init__(self):
        self.seen = []

    def __call__(self, X, y):
        self.seen.append((X.copy(), list(y)))
        return self

    def predict(self, X):
        return np.array(["A"] * len(X), dtype=object)


def test_standardizer_fitted_without_held_out_row():
    X, y = separable()
    X[0, 0] = 1e6
    rec = Recorder()
    loocv(X, y, rec)
    # in fold 0 the outlier is held out, so training columns are exact z-scores
    Xtr, _ = rec.seen[0]
    np.testing.assert_allclose(Xtr.mean(axis=0), 0, atol=1e-9)
    np.testing.assert_allclose(Xtr.std(axis=0), 1, atol=1e-9)


@pytest.mark.parametrize("kind", ["svm", "rf"])
def test_held_out_label_never_matters(kind):
    rng = np.random.default_rng(4)
    X = rng.normal(size=(18, 4))
    y = np.array(list("ABC") * 6, dtype=object)
    trainer = make_trainer(kind, seed=1)
    base = loocv(X, y, trainer)
    for i in range(len(y)):
        y2 = y.copy()
        y2[i] = "B" if y[i] != "B" else "C"
        pred = loocv(X, y2, trainer).per_fold[i][2]
        assert pred == base.per_fold[i][2]


def test_parallel_matches_serial():
    X, y = separable()
    a = loocv(X, y, make_trainer("rf", seed=2))
    b = loocv(X, y, make_trainer("rf", seed=2), jobs=2)
    assert a.per_fold == b.per_fold


def test_pairwise_matrix():
    X, y = separable()
    ds = DatasetMatrix([str(i) for i in range(len(y))], list(y), ("a", "b", "c"), X)
    authors, m = pairwise_matrix(ds, make_trainer("svm"))
    assert authors == ["A", "B", "C"]
    assert np.isnan(np.diag(m)).all()
    off = m[~np.eye(3, dtype=bool)]
    assert (off == 1.0).all()
    assert ev.pairwise_csv(authors, m).splitlines()[0] == "author,A,B,C"


def test_report_text():
    X, y = separable()
    rep = loocv(X, y, make_trainer("svm"))
    text = rep.to_text("svm all")
    assert "accuracy: 1.0000 (18/18)" in text
    assert "chance: 0.3333" in text
    assert rep.confusion_csv().startswith("true\\predicted,A,B,C")


def test_frequent_words():
    ds = frequent_words_features([("b1", "A", "the cat the dog"), ("b2", "B", "a dog, the end")], top_n=2)
    assert ds.feature_names == ("freq:the", "freq:dog")
    np.testing.assert_allclose(ds.X, [[0.5, 0.25], [0.25, 0.25]])


def test_unknown_classifier():
    with pytest.raises(ValueError):
        make_trainer("knn")
