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

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace seqobf::kernels {

namespace {

struct Table {
  std::size_t (*find_symbol)(std::span<const Symbol>, Symbol);
  std::size_t (*find_contiguous)(std::span<const Symbol>,
                                 std::span<const Symbol>);
  std::size_t (*count_symbol)(std::span<const Symbol>, Symbol);
};

constexpr Table kScalarTable{&scalar::FindSymbol, &scalar::FindContiguous,
                             &scalar::CountSymbol};
constexpr Table kAvx2Table{&avx2::FindSymbol, &avx2::FindContiguous,
                           &avx2::CountSymbol};

const Table* TableFor(Backend backend) {
  return backend == Backend::kAvx2 ? &kAvx2Table : &kScalarTable;
}

std::atomic<Backend>& ActiveSlot() {
  static std::atomic<Backend> slot{DefaultBackend()};
  return slot;
}

const Table& Active() { return *TableFor(ActiveSlot().load()); }

}  // namespace

std::string_view BackendName(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool BackendSupported(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Backend DefaultBackend() {
  const char* force = std::getenv("SEQOBF_FORCE_SCALAR");
  if (force != nullptr && std::strcmp(force, "0") != 0) {
    return Backend::kScalar;
  }
  return BackendSupported(Backend::kAvx2) ? Backend::kAvx2 : Backend::kScalar;
}

Backend ActiveBackend() { return ActiveSlot().load(); }

void SetBackend(Backend backend) {
  if (!BackendSupported(backend)) {
    throw std::invalid_argument("kernel backend " +
                                std::string(BackendName(backend)) +
                                " is not supported on this CPU");
  }
  ActiveSlot().store(backend);
}

std::size_t FindSymbol(std::span<const Symbol> data, Symbol symbol) {
  return Active().find_symbol(data, symbol);
}

std::size_t FindContiguous(std::span<const Symbol> haystack,
                           std::span<const Symbol> needle) {
  return Active().find_contiguous(haystack, needle);
}

std::size_t CountSymbol(std::span<const Symbol> data, Symbol symbol) {
  return Active().count_symbol(data, symbol);
}

}  // namespace seqobf::kernels
