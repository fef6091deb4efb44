"""Interpretable models: random forests, simple OLS, logistic regression."""

from .forest import CLASSIFICATION, REGRESSION, RandomForest
from .linear import LogisticFit, OLSFit, fit_logistic, fit_ols, logistic_loss_and_grad, sigmoid
from .persist import dumps_model, load_model, model_from_document, model_to_document, save_model
from .rng import substream

__all__ = [
    "CLASSIFICATION",
    "REGRESSION",
    "LogisticFit",
    "OLSFit",
    "RandomForest",
    "dumps_model",
    "fit_logistic",
    "fit_ols",
    "load_model",
    "logistic_loss_and_grad",
    "model_from_document",
    "model_to_document",
    "save_model",
    "sigmoid",
    "substream",
]
