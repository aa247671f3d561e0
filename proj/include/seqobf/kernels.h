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

// Symbol-scan kernels. Each kernel has a scalar reference implementation and
// an AVX2 variant; the variant is picked once at startup from CPUID and can
// be overridden for equivalence testing.

#ifndef SEQOBF_KERNELS_H_
#define SEQOBF_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>

#include "seqobf/core.h"

namespace seqobf::kernels {

enum class Backend { kScalar, kAvx2 };

std::string_view BackendName(Backend backend);
bool BackendSupported(Backend backend);

// Best supported backend, honoring SEQOBF_FORCE_SCALAR=1.
Backend DefaultBackend();
Backend ActiveBackend();
// Throws std::invalid_argument if the CPU lacks the backend.
void SetBackend(Backend backend);

// Index of the first element equal to `symbol`, or kNotFound.
std::size_t FindSymbol(std::span<const Symbol> data, Symbol symbol);

// Index of the first contiguous occurrence of `needle`, or kNotFound.
// An empty needle matches at 0.
std::size_t FindContiguous(std::span<const Symbol> haystack,
                           std::span<const Symbol> needle);

// Number of elements equal to `symbol`.
std::size_t CountSymbol(std::span<const Symbol> data, Symbol symbol);

namespace scalar {
std::size_t FindSymbol(std::span<const Symbol> data, Symbol symbol);
std::size_t FindContiguous(std::span<const Symbol> haystack,
                           std::span<const Symbol> needle);
std::size_t CountSymbol(std::span<const Symbol> data, Symbol symbol);
}  // namespace scalar

namespace avx2 {
std::size_t FindSymbol(std::span<const Symbol> data, Symbol symbol);
std::size_t FindContiguous(std::span<const Symbol> haystack,
                           std::span<const Symbol> needle);
std::size_t CountSymbol(std::span<const Symbol> data, Symbol symbol);
}  // namespace avx2

}  // namespace seqobf::kernels

#endif  // SEQOBF_KERNELS_H_
