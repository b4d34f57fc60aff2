/*
 * Copyright 2026 The vhss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end. Exit codes: 0 success, 1 verification REJECT (or
// a failed game), 2 validation or usage error, 3 I/O or format error.

#ifndef VHSS_CLI_H_
#define VHSS_CLI_H_

namespace vhss {

int CliMain(int argc, char** argv);

}  // namespace vhss

#endif  // VHSS_CLI_H_
