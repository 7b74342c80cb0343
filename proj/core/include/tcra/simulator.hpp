/*
   Copyright 2026 The tcra authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TCRA_SIMULATOR_HPP
#define TCRA_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "tcra/density_evolution.hpp"

namespace tcra {

/// Per-user repetition pattern: bit i occupies the sorted slot list
/// slots[offsets[i]..offsets[i+1]); slot lists are pairwise disjoint within
/// the user (no self-collisions).
struct TransmissionPattern {
    std::vector<int> degrees;
    std::vector<int> offsets;  // size n_bits + 1
    std::vector<int> slots;

    int n_bits() const { return static_cast<int>(degrees.size()); }
    int total_transmissions() const { return static_cast<int>(slots.size()); }
};

// Degrees drawn i.i.d. from gamma; when their sum exceeds t_slots all degrees
// are resampled (at most 100 attempts, then std::runtime_error). Slots are
// drawn uniformly without replacement and assigned to bits in index order.
// Deterministic for fixed (user_seed_base, user_id).
TransmissionPattern generate_pattern(int user_id, const DegreePolynomial& gamma_node, int n_bits,
                                     int t_slots, std::uint64_t user_seed_base);

/// Adder-erasure channel output: per slot the integer sum of occupying users'
/// bits, or kErasedSlot when the slot was erased.
constexpr std::int16_t kErasedSlot = -1;
struct ChannelOutput {
    std::vector<std::int16_t> value;
};

ChannelOutput transmit(const std::vector<std::vector<std::uint8_t>>& codewords,
                       const std::vector<TransmissionPattern>& patterns, double epsilon,
                       int t_slots, Rng& rng);

enum class DecoderKind { joint_ldpc, joint_map, tandem, inner_only };
DecoderKind decoder_kind_from_string(const std::string& s);
std::string to_string(DecoderKind kind);

struct DecodeStats {
    int iterations = 0;
    long long operations = 0;  // node updates; linear in the edge count
    std::vector<double> residual_history;
    int total_bits = 0;
    int resolved_bits = 0;

    double residual_fraction() const {
        return total_bits == 0 ? 0.0
                               : 1.0 - static_cast<double>(resolved_bits) / total_bits;
    }
};

struct DecodeResult {
    // Per user, per coded bit: 0/1 when resolved, kErased otherwise. A
    // resolved bit always equals the transmitted bit.
    std::vector<ErasureWord> recovered;
    DecodeStats stats;
};

// Joint message passing with the schedule time -> variable -> check ->
// variable -> time; runs until no bit newly resolves in a full iteration or
// max_iters. All users share the parity check matrix h.
DecodeResult joint_decode_ldpc(const ChannelOutput& output,
                               const std::vector<TransmissionPattern>& patterns,
                               const Gf2Matrix& h, int max_iters = 200);

// Same schedule with one block MAP attempt per user per iteration.
DecodeResult joint_decode_map(const ChannelOutput& output,
                              const std::vector<TransmissionPattern>& patterns,
                              const LinearBlockCode& code, int max_iters = 200);

// Benchmark decoder: inner peeling to its fixed point, then one outer
// decoding pass per user (LDPC peeling to its own fixed point, or one MAP
// attempt), with no feedback into the inner layer.
DecodeResult tandem_decode_ldpc(const ChannelOutput& output,
                                const std::vector<TransmissionPattern>& patterns,
                                const Gf2Matrix& h, int max_iters = 200);
DecodeResult tandem_decode_map(const ChannelOutput& output,
                               const std::vector<TransmissionPattern>& patterns,
                               const LinearBlockCode& code, int max_iters = 200);

// Collision-resolution layer alone.
DecodeResult inner_decode(const ChannelOutput& output,
                          const std::vector<TransmissionPattern>& patterns, int max_iters = 200);

/// One Monte Carlo frame with everything the decoders and the truth checks need.
struct FrameTrace {
    std::vector<std::vector<std::uint8_t>> codewords;
    std::vector<TransmissionPattern> patterns;
    ChannelOutput output;
};

FrameTrace make_frame(const SystemDesign& design, const CodewordSampler& sampler, int n_bits,
                      int t_slots, int n_active, std::uint64_t frame_seed);

struct SweepRow {
    int n_a = 0;
    int frames = 0;
    double mean_residual = 0.0;
    double std_residual = 0.0;
    double mean_iters = 0.0;
};

struct SweepConfig {
    int n_bits = 1000;       // outer blocklength (short-code designs use code.n)
    int frames_per_point = 100;
    std::uint64_t seed = 1;
    DecoderKind decoder = DecoderKind::joint_ldpc;
    int max_decoder_iters = 200;
    unsigned threads = 0;
};

// Residual bit-erasure sweep over user counts. Every resolved bit is checked
// against the transmitted codeword (zero undetected errors). For LDPC designs
// a fresh parity-check instance is built per sweep point and reused for all
// of its frames. T = round(n / R_i).
std::vector<SweepRow> run_sweep(const SystemDesign& design, const std::vector<int>& n_a_range,
                                const SweepConfig& cfg);

int slots_for(const SystemDesign& design, int n_bits);

}  // namespace tcra

#endif
