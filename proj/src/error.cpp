/* Copyright 2026 The graysynth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "graysynth/error.hpp"

namespace graysynth {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidGrayLevel: return "InvalidGrayLevel";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MissingGlyph: return "MissingGlyph";
    case ErrorKind::ZeroArea: return "ZeroArea";
    case ErrorKind::OutOfBounds: return "OutOfBounds";
    case ErrorKind::NoFit: return "NoFit";
    case ErrorKind::EmptyCandidates: return "EmptyCandidates";
    case ErrorKind::EmptyLibrary: return "EmptyLibrary";
    case ErrorKind::EmptyPool: return "EmptyPool";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::InvalidFont: return "InvalidFont";
    case ErrorKind::Io: return "Io";
    case ErrorKind::CorruptDataset: return "CorruptDataset";
  }
  return "Unknown";
}

}  // namespace graysynth
