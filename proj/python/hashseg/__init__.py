# Copyright 2026 The hashseg Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Hashtag segmentation: n-gram baseline, char BiLSTM and active learning."""

from hashseg._hashseg import (
    HashsegError,
    LabeledHashtag,
    Model,
    NGramTable,
    al_run,
    align_segmentation,
    apply_labels,
    evaluate,
    evaluate_baseline,
    extract_ngrams,
    format_dataset,
    generate_dataset,
    mnlp,
    parse_dataset,
    predict,
    project_embeddings,
    segment_dp,
    svd_top2,
    tokenize,
    train,
)

__all__ = [
    "HashsegError",
    "LabeledHashtag",
    "Model",
    "NGramTable",
    "al_run",
    "align_segmentation",
    "apply_labels",
    "evaluate",
    "evaluate_baseline",
    "extract_ngrams",
    "format_dataset",
    "generate_dataset",
    "mnlp",
    "parse_dataset",
    "predict",
    "project_embeddings",
    "segment_dp",
    "svd_top2",
    "tokenize",
    "train",
]
