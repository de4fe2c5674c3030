// Copyright 2026 The NCG Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ncg/error.h"

namespace ncg {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedDocument: return "malformed-document";
    case ErrorCode::kVertexOutOfRange: return "vertex-out-of-range";
    case ErrorCode::kSelfLoop: return "self-loop";
    case ErrorCode::kDuplicateEdge: return "duplicate-edge";
    case ErrorCode::kTooManyVertices: return "too-many-vertices";
    case ErrorCode::kDisconnected: return "disconnected";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace ncg
