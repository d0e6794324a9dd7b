"""Multi-label classification by nearest labelset with double distances,
with Binary Relevance and Subset-Mapping baselines."""

from .br import BRModel, br_fit, br_predict, br_predict_proba, smbr_predict
from .data import (Dataset, DataError, StandardizationStats, SplitPair,
                   dataset_summary, load_csv, load_sparse, save_csv,
                   split_random, standardize_apply, standardize_fit)
from .evaluate import (cross_validate, generate_synthetic, holdout_eval,
                       observed_labelset_split, scaling_experiment,
                       wilcoxon_signed_rank, WilcoxonResult)
from .kernels import BACKEND
from .learner import (ConstantProbModel, LinearProbModel, TrainingError,
                      fit_fallback, fit_logistic, predict_proba)
from .metrics import (MetricsReport, aggregate, f_measure, hamming_loss,
                      instance_metrics, jaccard, zero_one_loss)
from .model import (BinomialFit, DistancePair, NlddModel, fit_binomial_glm,
                    mine_pairs, nldd_predict, nldd_train,
                    predict_with_confidence, theta)
from .persist import load_model, save_model

__version__ = "0.1.0"
