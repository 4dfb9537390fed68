// Copyright 2026 telesurf Contributors
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

#ifndef TELESURF_DECODER_HPP
#define TELESURF_DECODER_HPP

#include <string>
#include <utility>
#include <vector>

#include "telesurf/layout.hpp"
#include "telesurf/teleport.hpp"

namespace telesurf {

/// Matching structure of the Z-face sublattice: minimal error-chain lengths
/// between faces (and to the admissible boundary), plus the chains
/// themselves for building corrections.
struct DefectGraph {
  int n_faces = 0;
  std::vector<std::vector<int>> dist;        // face x face chain length
  std::vector<int> boundary_dist;            // face -> nearest boundary
  std::vector<std::vector<int>> chain;       // flattened (i*n+j) -> qubit list
  std::vector<std::vector<int>> boundary_chain;

  static const DefectGraph& of(const CodeLayout& layout);  // cached per distance
};

enum class DecoderKind { Mwpm, Ml };

struct DecodeResult {
  ErrorPattern correction;
  int logical_flip = 0;
  std::pair<double, double> log_likelihoods{0, 0};  // (L0, L1), ML only
  double matching_weight = 0;  // total chain length, MWPM only
};

/// Exact minimum-weight perfect matching of syndrome defects, with one
/// dedicated virtual boundary node per defect. Deterministic tie-breaking
/// via an index-keyed perturbation of the edge weights.
DecodeResult decode_mwpm(const CodeLayout& layout, const Syndrome& syndrome, double q);

/// Coset-likelihood decoder: compares W(E) against W(E xor X_L) at the
/// Nishimori coupling e^{2b} = (1-q)/q and picks the heavier class. Accepts
/// either a syndrome (length = number of Z faces, a boundary-peeled
/// reference is built internally) or a reference error pattern (length d^2);
/// the two lengths never coincide.
DecodeResult decode_coset_ml(const CodeLayout& layout, const BitVec& syndrome_or_reference,
                             double q);

/// Exhaustive enumeration over the X-face group, for d <= 4. Returns the
/// linear-domain coset weights (W0, W1).
std::pair<double, double> brute_force_coset(const CodeLayout& layout,
                                            const ErrorPattern& reference, double q);

/// Extracts the Z-face syndrome of a receiver readout, decodes it, and
/// returns the corrected logical bit.
int decode_shot(const CodeLayout& layout, const BitVec& receiver_bits, double q,
                DecoderKind kind);

/// Batch mode over a sampled bitstring file; CSV columns
/// shot,syndrome_weight,logical_flip,corrected_bit,L0,L1.
std::string decode_batch_csv(const CodeLayout& layout, const BitstringBatch& batch, double q,
                             DecoderKind kind);

}  // namespace telesurf

#endif  // TELESURF_DECODER_HPP
