# Copyright 2026 The loccbench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Entropic bounds on LOCC state discrimination and entanglement distillation."""

from loccbench._loccbench import (
    DensityOperator,
    Measure,
    Party,
    bell_diagonal,
    bound_report,
    concurrence,
    distillation_report,
    dp_bound,
    dp_bound_bell,
    dpprime_bound,
    dpprime_bound_bell,
    ensemble_holevo,
    entanglement,
    eof_from_concurrence,
    generalized_bell_state,
    generate_scenario,
    hermitian_eig,
    holevo_chi,
    is_ppt,
    partial_trace,
    partial_transpose,
    purity,
    run_scenario,
    run_scenario_file,
    shannon_entropy,
    von_neumann_entropy,
)

__all__ = [
    "DensityOperator",
    "Measure",
    "Party",
    "bell_diagonal",
    "bound_report",
    "concurrence",
    "distillation_report",
    "dp_bound",
    "dp_bound_bell",
    "dpprime_bound",
    "dpprime_bound_bell",
    "ensemble_holevo",
    "entanglement",
    "eof_from_concurrence",
    "generalized_bell_state",
    "generate_scenario",
    "hermitian_eig",
    "holevo_chi",
    "is_ppt",
    "partial_trace",
    "partial_transpose",
    "purity",
    "run_scenario",
    "run_scenario_file",
    "shannon_entropy",
    "von_neumann_entropy",
]
