# Copyright 2026 The pbp Authors
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
"""Quantum programs with qcase and recursive procedures, compiled to circuits."""

from ._core import (
    Error,
    Program,
    bench,
    builtin,
    builtin_ids,
    builtin_source,
    classify,
    compile,
    fit_exponent,
    load_program,
    load_program_file,
    run,
    simulate,
    time_complexity,
    verify,
)

__all__ = [
    "Error",
    "Program",
    "bench",
    "builtin",
    "builtin_ids",
    "builtin_source",
    "classify",
    "compile",
    "fit_exponent",
    "load_program",
    "load_program_file",
    "run",
    "simulate",
    "time_complexity",
    "verify",
]
