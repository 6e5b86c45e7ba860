from .baseline import frequent_words_features
from .evaluation import EvalReport, loocv, make_trainer, pairwise_matrix
from .forest import RandomForest, train_random_forest
from .pca import PCAResult, pca, silhouette
from .svm import LinearSVM, train_linear_svm

__all__ = [
    "EvalReport",
    "LinearSVM",
    "PCAResult",
    "RandomForest",
    "frequent_words_features",
    "loocv",
    "make_trainer",
    "pairwise_matrix",
    "pca",
    "silhouette",
    "train_linear_svm",
    "train_random_forest",
]
