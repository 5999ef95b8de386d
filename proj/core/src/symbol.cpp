// Copyright 2026 The gtgd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "gtgd/error.hpp"
#include "gtgd/model.hpp"

namespace gtgd {
namespace {

constexpr std::size_t kChunkBits = 12;
constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
constexpr std::size_t kMaxChunks = std::size_t{1} << 16;

// Append-only table. Readers index chunks without locking: chunk pointers are
// published before any id referring to them escapes the writer's lock.
class SymbolTable {
 public:
  SymbolTable() {
    chunks_ = std::make_unique<std::atomic<std::string*>[]>(kMaxChunks);
    for (std::size_t i = 0; i < kMaxChunks; ++i) chunks_[i] = nullptr;
    intern("");
  }

  ~SymbolTable() {
    for (std::size_t i = 0; i < kMaxChunks; ++i) delete[] chunks_[i].load();
  }

  std::uint32_t intern(std::string_view text) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(std::string(text));
    if (it != index_.end()) return it->second;
    std::size_t id = size_;
    std::size_t chunk = id >> kChunkBits;
    if (chunk >= kMaxChunks) {
      throw Error(Errc::size_limit_exceeded, "symbol table exhausted");
    }
    if (chunks_[chunk].load(std::memory_order_relaxed) == nullptr) {
      chunks_[chunk].store(new std::string[kChunkSize],
                           std::memory_order_release);
    }
    chunks_[chunk].load(std::memory_order_relaxed)[id & (kChunkSize - 1)] =
        std::string(text);
    index_.emplace(std::string(text), static_cast<std::uint32_t>(id));
    ++size_;
    return static_cast<std::uint32_t>(id);
  }

  std::string_view lookup(std::uint32_t id) const {
    const std::string* chunk =
        chunks_[id >> kChunkBits].load(std::memory_order_acquire);
    return chunk[id & (kChunkSize - 1)];
  }

 private:
  std::mutex mu_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::unique_ptr<std::atomic<std::string*>[]> chunks_;
  std::size_t size_ = 0;
};

SymbolTable& table() {
  static SymbolTable* t = new SymbolTable();
  return *t;
}

}  // namespace

Symbol::Symbol(std::string_view text) : id_(table().intern(text)) {}

std::string_view Symbol::str() const { return table().lookup(id_); }

std::strong_ordering operator<=>(Symbol a, Symbol b) {
  if (a.id_ == b.id_) return std::strong_ordering::equal;
  int c = a.str().compare(b.str());
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace gtgd
