# Copyright 2026 The vhss Authors.
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

"""Two-server verifiable homomorphic secret sharing.

Keys, ciphertexts and partial results are plain ``bytes`` in the same wire
format the ``vhss`` command-line tool reads and writes.
"""

from ._core import (
    DecodeError,
    DimensionError,
    DomainError,
    GameReport,
    ParameterError,
    ValidationError,
    derive_params,
    describe,
    encrypt,
    evaluate,
    keygen,
    params_table,
    profile,
    run_game,
    verify,
)

__all__ = [
    "DecodeError",
    "DimensionError",
    "DomainError",
    "GameReport",
    "ParameterError",
    "ValidationError",
    "derive_params",
    "describe",
    "encrypt",
    "evaluate",
    "keygen",
    "params_table",
    "profile",
    "run_game",
    "verify",
]
