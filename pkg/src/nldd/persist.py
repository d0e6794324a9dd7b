"""Versioned JSON persistence for fitted models."""

import json

import numpy as np

from .br import BRModel
from .data import DataError, StandardizationStats
from .learner import ConstantProbModel, LinearProbModel
from .model import BinomialFit, NlddModel

FORMAT_VERSION = 1


def _stats_doc(stats):
    return {"means": stats.means.tolist(), "sds": stats.sds.tolist()}


def _stats_from(doc):
    return StandardizationStats(means=np.array(doc["means"]),
                                sds=np.array(doc["sds"]))


def _classifier_doc(clf):
    if isinstance(clf, ConstantProbModel):
        return {"type": "constant", "p": clf.p}
    return {"type": "linear", "weights": clf.weights.tolist(), "lam": clf.lam,
            "converged": clf.converged, "iterations": clf.iterations}


def _classifier_from(doc):
    if doc["type"] == "constant":
        return ConstantProbModel(p=doc["p"])
    return LinearProbModel(weights=np.array(doc["weights"]), lam=doc["lam"],
                           converged=doc["converged"],
                           iterations=doc["iterations"])


def _br_doc(br):
    return {"stats": _stats_doc(br.stats),
            "classifiers": [_classifier_doc(c) for c in br.classifiers],
            "label_names": list(br.label_names)}


def _br_from(doc):
    return BRModel(classifiers=[_classifier_from(c) for c in doc["classifiers"]],
                   stats=_stats_from(doc["stats"]),
                   label_names=list(doc["label_names"]))


def save_model(model, path):
    """Write a BR or nearest-labelset model as a versioned JSON document."""
    if isinstance(model, BRModel):
        doc = {"format_version": FORMAT_VERSION, "method": "br",
               "br": _br_doc(model)}
    elif isinstance(model, NlddModel):
        doc = {
            "format_version": FORMAT_VERSION,
            "method": "nldd",
            "br": _br_doc(model.br),
            "fit": {"beta0": model.fit.beta0, "beta1": model.fit.beta1,
                    "beta2": model.fit.beta2, "converged": model.fit.converged,
                    "iterations": model.fit.iterations,
                    "final_gradient_norm": model.fit.final_gradient_norm},
            "train_features_std": model.train_features_std.tolist(),
            "train_labelsets": model.train_labelsets.tolist(),
            "pair_count": model.pair_count,
            "distance_ops": model.distance_ops,
        }
    else:
        raise TypeError(f"cannot serialize {type(model).__name__}")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"))
        fh.write("\n")


def load_model(path):
    """Read a model file; returns (method, model)."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}: not a valid model file: {exc}") from exc
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise DataError(f"{path}: unsupported format_version {version!r}")
    method = doc.get("method")
    if method == "br":
        return "br", _br_from(doc["br"])
    if method == "nldd":
        br = _br_from(doc["br"])
        fit = BinomialFit(**doc["fit"])
        return "nldd", NlddModel(
            br=br, fit=fit,
            train_features_std=np.array(doc["train_features_std"]),
            train_labelsets=np.array(doc["train_labelsets"], dtype=np.int64),
            stats=br.stats,
            pair_count=doc["pair_count"],
            distance_ops=doc["distance_ops"])
    raise DataError(f"{path}: unknown method {method!r}")
