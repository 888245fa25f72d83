# Copyright 2026 The Storyeval Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Meta-evaluation toolkit for LLM judges of generated stories."""

from storyeval._core import (
    DataError,
    Dataset,
    TransportError,
    UndefinedCorrelationError,
    bh_adjust,
    build_eval_prompt,
    cache_key,
    calibrate_threshold,
    ci95_mean,
    contamination_rate,
    correlate,
    extract_rating,
    gwet_ac1,
    icc2k,
    ingest,
    kendall_tau_b,
    min_k_prob,
    pearson,
    roc_auc,
    spearman,
    williams_test,
)

__all__ = [
    "DataError",
    "Dataset",
    "TransportError",
    "UndefinedCorrelationError",
    "bh_adjust",
    "build_eval_prompt",
    "cache_key",
    "calibrate_threshold",
    "ci95_mean",
    "contamination_rate",
    "correlate",
    "extract_rating",
    "gwet_ac1",
    "icc2k",
    "ingest",
    "kendall_tau_b",
    "min_k_prob",
    "pearson",
    "roc_auc",
    "spearman",
    "williams_test",
]
__version__ = "0.1.0"
