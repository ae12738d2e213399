// Copyright 2026 The rmetro Authors
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

#ifndef RMETRO_MODELS_HAMILTONIAN_HPP
#define RMETRO_MODELS_HAMILTONIAN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmetro/designs/povm.hpp"
#include "rmetro/models/pauli.hpp"
#include "rmetro/qmath/matrix.hpp"
#include "rmetro/states/family.hpp"

namespace rmetro {

/// Generators P_1, ..., P_{4^n - 1}: every non-identity Pauli on the probe.
std::vector<PauliLabel> hamiltonian_paulis(std::size_t n);

/// (1/sqrt(d)) sum_k |k>|k> on probe tensor ancilla, dimension d^2.
CVector maximally_entangled_state(std::size_t n);

enum class HamiltonianInput { MaximallyEntangled, Stabilizer, Custom };
const char *to_string(HamiltonianInput input);
HamiltonianInput parse_hamiltonian_input(const std::string &s);

struct HamiltonianScenario {
    std::size_t n = 1;
    HamiltonianInput input = HamiltonianInput::MaximallyEntangled;
    /// Input state for Custom; length 2^n (no ancilla) or 4^n (with ancilla).
    CVector custom;
    std::optional<PauliChannel> noise;
};

/// Output state E_0(psi) and its derivatives -i E([P_k tensor 1, psi]) at theta = 0.
struct HamiltonianOutput {
    CMatrix rho;
    std::vector<CMatrix> drho;
    std::size_t ancilla_dim = 1;
};
HamiltonianOutput hamiltonian_output(const CVector &psi, std::size_t n, const PauliChannel *noise = nullptr);

/// rho_theta = E(U_theta psi U_theta^dag) with U_theta = exp(-i sum_k theta_k P_k),
/// for finite-theta checks. Derivatives are exact through the block-matrix
/// exponential.
class HamiltonianFamily : public ParamStateFamily {
   public:
    HamiltonianFamily(std::size_t n, CVector psi, std::optional<PauliChannel> noise = std::nullopt);

    std::string name() const override {
        return "hamiltonian";
    }
    std::size_t dim() const override {
        return psi_.size();
    }
    std::size_t n_params() const override {
        return paulis_.size();
    }
    bool has_analytic_derivs() const override {
        return true;
    }

   protected:
    std::optional<std::string> domain_violation(const RVector &, bool, double) const override {
        return std::nullopt;
    }
    CMatrix eval_unchecked(const RVector &theta) const override;
    std::vector<CMatrix> analytic_derivs(const RVector &theta) const override;

   private:
    CMatrix generator(const RVector &theta) const;
    CMatrix noisy(const CMatrix &m) const;

    std::size_t n_;
    CVector psi_;
    std::optional<PauliChannel> noise_;
    std::vector<PauliLabel> paulis_;
    std::vector<CMatrix> dense_;
};

/// J_jk = 4 (<psi| {P_j, P_k} / 2 |psi> - <psi|P_j|psi><psi|P_k|psi>), P acting on the probe.
RMatrix qfim_hamiltonian_pure(const CVector &psi, std::size_t n);

/// Diagonal QFIM of the noisy maximally entangled output,
/// J_ii = 2 sum_{k: q_k + q_{k+i} > 0} (q_{k+i} - q_k)^2 / (q_k + q_{k+i}).
RMatrix qfim_noisy_bell(const PauliChannel &ch);

/// X_j = i / (2 (q_0 - q_j)) [psi_theta, P_j tensor 1] for the maximally
/// entangled input, i.e. J tilde^{-1} L tilde with
/// L tilde_j = 2i (q_0 - q_j) / (q_0 + q_j) [psi, P_j] and
/// J tilde_jj = 4 (q_0 - q_j)^2 / (q_0 + q_j). theta empty means theta = 0.
/// Throws DomainError when q_0 = q_j.
CMatrix deviation_me_noisy(const PauliChannel &ch, const PauliLabel &j, const RVector &theta = {});

/// X_j = i (d + 1) / (2 d (1 - q - q / (d^2 - 1))) [psi, P_j] for a stabilizer
/// input psi under global depolarizing noise of rate q (q = 0 is noiseless).
/// The factor 1 - q - q/(d^2 - 1) is <0|d_j rho|j~> relative to the noiseless
/// value; local unbiasedness holds on the ensemble average.
CMatrix deviation_stabilizer_depolarizing(const CVector &psi, const PauliLabel &j, double q);

/// Probability of leaving the input's stabilizer space under the channel,
/// sum_k q_k (1 - <psi|P_k|psi>^2).
double stabilizer_offsupport_rate(const CVector &psi, const PauliChannel &ch);

/// Fisher information of the random-stabilizer input ensemble with a fixed
/// measurement on every input.
struct EnsembleFisher {
    RMatrix cfim;
    RMatrix cfim_stderr;
    RMatrix qfim;
    RMatrix qfim_stderr;
    /// Average J tilde from the low-rank split at mu = 1 - q (noisy runs only).
    RMatrix jtilde;
    std::size_t inputs = 0;
    bool exact = false;
};

/// Uniform average over every n-qubit stabilizer state (exact; n <= 3).
EnsembleFisher stabilizer_ensemble_fisher_exact(std::size_t n, const PauliChannel *noise, const RankOnePOVM &m);
/// Monte Carlo average over `shots` inputs U|0>, U a uniformly sampled
/// Clifford. Throws DomainError for zero shots.
EnsembleFisher stabilizer_ensemble_cfim(std::size_t n, const PauliChannel *noise, const RankOnePOVM &m,
                                        std::size_t shots, uint64_t seed);

/// Exact stabilizer-orbit average of qfim_hamiltonian_pure.
RMatrix stabilizer_average_qfim(std::size_t n);

/// (d^2 - 1) / 4 with d = 2^n.
double wmse_lower_bound_w(std::size_t n);

/// ((1 - 2q)^2 - q) / (1 - 2q)^2.
double noisy_lowrank_c(double q);
/// (d+2)/(d+1) (1-q)^2 (1-4q) / (2 (2-q)): I >= this * J_noiseless.
double noisy_design_constant(std::size_t d, double q);

/// Registers "hamiltonian" (params n, input = me | stabilizer | comma list,
/// noise = none | depolarizing, q) with the family registry.
void register_model_families();

}  // namespace rmetro

#endif
