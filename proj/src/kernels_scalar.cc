/*
 * Copyright 2026 The seqobf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "seqobf/kernels.h"

namespace seqobf::kernels::scalar {

std::size_t FindSymbol(std::span<const Symbol> data, Symbol symbol) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] == symbol) return i;
  }
  return kNotFound;
}

std::size_t FindContiguous(std::span<const Symbol> haystack,
                           std::span<const Symbol> needle) {
  if (needle.empty()) return 0;
  if (needle.size() > haystack.size()) return kNotFound;
  const std::size_t last = haystack.size() - needle.size();
  for (std::size_t i = 0; i <= last; ++i) {
    std::size_t j = 0;
    while (j < needle.size() && haystack[i + j] == needle[j]) ++j;
    if (j == needle.size()) return i;
  }
  return kNotFound;
}

std::size_t CountSymbol(std::span<const Symbol> data, Symbol symbol) {
  std::size_t count = 0;
  for (Symbol s : data) count += (s == symbol);
  return count;
}

}  // namespace seqobf::kernels::scalar
