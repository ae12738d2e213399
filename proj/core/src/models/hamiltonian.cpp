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

#include "rmetro/models/hamiltonian.hpp"

#include <cmath>
#include <sstream>

#include "rmetro/designs/clifford.hpp"
#include "rmetro/designs/tableau.hpp"
#include "rmetro/fisher/fisher.hpp"
#include "rmetro/fisher/lowrank.hpp"
#include "rmetro/qmath/errors.hpp"
#include "rmetro/qmath/linalg.hpp"
#include "rmetro/qmath/rng.hpp"
#include "rmetro/states/registry.hpp"

namespace rmetro {

namespace {

constexpr uint64_t kStabilizerInputDomain = 0x7374616269;  // "stabi"

std::size_t ancilla_dim_for(const CVector &psi, std::size_t n) {
    const std::size_t d = std::size_t{1} << n;
    if (psi.empty() || psi.size() % d != 0) {
        std::ostringstream ss;
        ss << "hamiltonian: input of length " << psi.size() << " does not hold a " << n << "-qubit probe";
        throw DimensionError(ss.str());
    }
    return psi.size() / d;
}

void check_noise(const PauliChannel *noise, std::size_t n) {
    if (noise != nullptr && noise->qubits() != n) {
        throw DimensionError("hamiltonian: noise channel acts on a different number of qubits");
    }
}

// i c (psi w^dag - w psi^dag) = i c [psi psi^dag, G] for w = G psi.
CMatrix scaled_commutator(const CVector &psi, const CVector &w, double c) {
    CMatrix x = outer(psi, w) - outer(w, psi);
    x *= cplx(0, c);
    return x;
}

struct Accumulator {
    RMatrix sum;
    RMatrix sumsq;

    void add(const RMatrix &v) {
        if (sum.empty()) {
            sum = RMatrix(v.rows(), v.cols());
            sumsq = RMatrix(v.rows(), v.cols());
        }
        for (std::size_t k = 0; k < v.data().size(); k++) {
            sum.data()[k] += v.data()[k];
            sumsq.data()[k] += v.data()[k] * v.data()[k];
        }
    }
    RMatrix mean(std::size_t count) const {
        return sum * (1.0 / static_cast<double>(count));
    }
    RMatrix stderr_of_mean(std::size_t count) const {
        RMatrix out(sum.rows(), sum.cols());
        const double nn = static_cast<double>(count);
        if (count < 2) {
            return out;
        }
        for (std::size_t k = 0; k < sum.data().size(); k++) {
            const double mu = sum.data()[k] / nn;
            const double var = std::max(0.0, (sumsq.data()[k] - nn * mu * mu) / (nn - 1));
            out.data()[k] = std::sqrt(var / nn);
        }
        return out;
    }
};

struct InputFisher {
    RMatrix cfim;
    RMatrix qfim;
    RMatrix jtilde;
};

InputFisher input_fisher(const CVector &psi, std::size_t n, const PauliChannel *noise, const RankOnePOVM &m) {
    const HamiltonianOutput out = hamiltonian_output(psi, n, noise);
    InputFisher f;
    f.cfim = cfim(out.rho, out.drho, m);
    if (noise != nullptr) {
        const LowRankSplit split = lowrank_split(out.rho, out.drho, noise->rate(0));
        f.qfim = split.j;
        f.jtilde = split.j_tilde;
    } else {
        f.qfim = qfim_hamiltonian_pure(psi, n);
    }
    return f;
}

}  // namespace

std::vector<PauliLabel> hamiltonian_paulis(std::size_t n) {
    std::vector<PauliLabel> out;
    for (uint64_t k = 1; k < pauli_count(n); k++) {
        out.push_back({n, k});
    }
    return out;
}

CVector maximally_entangled_state(std::size_t n) {
    const std::size_t d = std::size_t{1} << n;
    CVector v(d * d);
    const double a = 1 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d; k++) {
        v[k * d + k] = a;
    }
    return v;
}

const char *to_string(HamiltonianInput input) {
    switch (input) {
        case HamiltonianInput::MaximallyEntangled:
            return "me";
        case HamiltonianInput::Stabilizer:
            return "stabilizer";
        case HamiltonianInput::Custom:
            return "custom";
    }
    return "?";
}

HamiltonianInput parse_hamiltonian_input(const std::string &s) {
    if (s == "me") {
        return HamiltonianInput::MaximallyEntangled;
    }
    if (s == "stabilizer") {
        return HamiltonianInput::Stabilizer;
    }
    return HamiltonianInput::Custom;
}

HamiltonianOutput hamiltonian_output(const CVector &psi, std::size_t n, const PauliChannel *noise) {
    check_noise(noise, n);
    HamiltonianOutput out;
    out.ancilla_dim = ancilla_dim_for(psi, n);
    out.rho = projector(psi);
    for (const PauliLabel &p : hamiltonian_paulis(n)) {
        const CVector w = apply_pauli(p, psi, out.ancilla_dim);
        // -i [P, psi] = -i (w psi^dag - psi w^dag)
        out.drho.push_back(scaled_commutator(psi, w, 1.0));
    }
    if (noise != nullptr) {
        out.rho = apply_pauli_channel(out.rho, *noise, out.ancilla_dim);
        for (auto &d : out.drho) {
            d = apply_pauli_channel(d, *noise, out.ancilla_dim);
        }
    }
    return out;
}

HamiltonianFamily::HamiltonianFamily(std::size_t n, CVector psi, std::optional<PauliChannel> noise)
    : n_(n), psi_(normalized(psi)), noise_(std::move(noise)), paulis_(hamiltonian_paulis(n)) {
    check_noise(noise_ ? &*noise_ : nullptr, n);
    const std::size_t anc = ancilla_dim_for(psi_, n);
    for (const auto &p : paulis_) {
        dense_.push_back(kron(pauli_matrix(p), CMatrix::identity(anc)));
    }
}

CMatrix HamiltonianFamily::generator(const RVector &theta) const {
    CMatrix h(dim(), dim());
    for (std::size_t k = 0; k < paulis_.size(); k++) {
        if (theta[k] != 0) {
            h += dense_[k] * cplx(theta[k]);
        }
    }
    return h;
}

CMatrix HamiltonianFamily::noisy(const CMatrix &m) const {
    return noise_ ? apply_pauli_channel(m, *noise_, dim() >> n_) : m;
}

CMatrix HamiltonianFamily::eval_unchecked(const RVector &theta) const {
    const CMatrix u = expm(generator(theta) * cplx(0, -1));
    return noisy(projector(u * psi_));
}

std::vector<CMatrix> HamiltonianFamily::analytic_derivs(const RVector &theta) const {
    const std::size_t D = dim();
    const CMatrix a = generator(theta) * cplx(0, -1);
    const CVector phi = expm(a) * psi_;
    std::vector<CMatrix> out;
    for (std::size_t k = 0; k < paulis_.size(); k++) {
        // exp([[A, B], [0, A]]) carries d/dt exp(A + t B) in its upper-right block.
        CMatrix block(2 * D, 2 * D);
        for (std::size_t r = 0; r < D; r++) {
            for (std::size_t c = 0; c < D; c++) {
                block(r, c) = a(r, c);
                block(D + r, D + c) = a(r, c);
                block(r, D + c) = dense_[k](r, c) * cplx(0, -1);
            }
        }
        const CMatrix e = expm(block);
        CVector dphi(D);
        for (std::size_t r = 0; r < D; r++) {
            for (std::size_t c = 0; c < D; c++) {
                dphi[r] += e(r, D + c) * psi_[c];
            }
        }
        out.push_back(noisy(outer(dphi, phi) + outer(phi, dphi)));
    }
    return out;
}

RMatrix qfim_hamiltonian_pure(const CVector &psi, std::size_t n) {
    const std::size_t anc = ancilla_dim_for(psi, n);
    const auto paulis = hamiltonian_paulis(n);
    const std::size_t m = paulis.size();
    std::vector<CVector> w;
    RVector e(m);
    for (std::size_t k = 0; k < m; k++) {
        w.push_back(apply_pauli(paulis[k], psi, anc));
        e[k] = inner(psi, w[k]).real();
    }
    RMatrix j(m, m);
    for (std::size_t a = 0; a < m; a++) {
        for (std::size_t b = a; b < m; b++) {
            j(a, b) = j(b, a) = 4 * (inner(w[a], w[b]).real() - e[a] * e[b]);
        }
    }
    return j;
}

RMatrix qfim_noisy_bell(const PauliChannel &ch) {
    const std::size_t count = ch.rates().size();
    RMatrix j(count - 1, count - 1);
    for (uint64_t i = 1; i < count; i++) {
        double s = 0;
        for (uint64_t k = 0; k < count; k++) {
            const double a = ch.rate(k);
            const double b = ch.rate(k ^ i);
            if (a + b > 0) {
                s += (b - a) * (b - a) / (a + b);
            }
        }
        j(i - 1, i - 1) = 2 * s;
    }
    return j;
}

CMatrix deviation_me_noisy(const PauliChannel &ch, const PauliLabel &j, const RVector &theta) {
    const std::size_t n = ch.qubits();
    if (j.n != n || j.is_identity()) {
        throw DomainError("deviation_me_noisy: label must be a non-identity Pauli on the channel's qubits");
    }
    const double q0 = ch.rate(0);
    const double qj = ch.rate(j.k);
    if (std::abs(q0 - qj) <= 1e-14) {
        std::ostringstream ss;
        ss << "deviation_me_noisy: q_0 = q_" << j.k << " = " << q0 << " makes the coefficient singular";
        throw DomainError(ss.str());
    }
    const std::size_t d = std::size_t{1} << n;
    CVector psi = maximally_entangled_state(n);
    if (!theta.empty()) {
        const auto paulis = hamiltonian_paulis(n);
        if (theta.size() != paulis.size()) {
            throw DimensionError("deviation_me_noisy: theta has the wrong length");
        }
        CMatrix a(d * d, d * d);
        for (std::size_t k = 0; k < paulis.size(); k++) {
            if (theta[k] != 0) {
                a += kron(pauli_matrix(paulis[k]), CMatrix::identity(d)) * cplx(0, -theta[k]);
            }
        }
        psi = expm(a) * psi;
    }
    return scaled_commutator(psi, apply_pauli(j, psi, d), 1 / (2 * (q0 - qj)));
}

CMatrix deviation_stabilizer_depolarizing(const CVector &psi, const PauliLabel &j, double q) {
    const std::size_t d = std::size_t{1} << j.n;
    if (psi.size() != d) {
        throw DimensionError("deviation_stabilizer_depolarizing: input is not a probe state");
    }
    const double dd = static_cast<double>(d);
    const double c = (dd + 1) / (2 * dd * (1 - q - q / (dd * dd - 1)));
    return scaled_commutator(psi, apply_pauli(j, psi), c);
}

double stabilizer_offsupport_rate(const CVector &psi, const PauliChannel &ch) {
    double s = 0;
    for (uint64_t k = 1; k < ch.rates().size(); k++) {
        const double e = inner(psi, apply_pauli(PauliLabel{ch.qubits(), k}, psi)).real();
        s += ch.rate(k) * (1 - e * e);
    }
    return s;
}

EnsembleFisher stabilizer_ensemble_fisher_exact(std::size_t n, const PauliChannel *noise, const RankOnePOVM &m) {
    const auto states = stabilizer_states(n);
    Accumulator ci, cj, ct;
    for (const auto &s : states) {
        const InputFisher f = input_fisher(s, n, noise, m);
        ci.add(f.cfim);
        cj.add(f.qfim);
        if (noise != nullptr) {
            ct.add(f.jtilde);
        }
    }
    EnsembleFisher out;
    out.inputs = states.size();
    out.exact = true;
    out.cfim = ci.mean(out.inputs);
    out.qfim = cj.mean(out.inputs);
    out.cfim_stderr = RMatrix(out.cfim.rows(), out.cfim.cols());
    out.qfim_stderr = out.cfim_stderr;
    if (noise != nullptr) {
        out.jtilde = ct.mean(out.inputs);
    }
    return out;
}

EnsembleFisher stabilizer_ensemble_cfim(std::size_t n, const PauliChannel *noise, const RankOnePOVM &m,
                                        std::size_t shots, uint64_t seed) {
    if (shots == 0) {
        throw DomainError("stabilizer_ensemble_cfim: zero shots");
    }
    Accumulator ci, cj, ct;
    for (std::size_t i = 0; i < shots; i++) {
        Rng rng(seed, kStabilizerInputDomain, n, i);
        const Tableau t = random_clifford_tableau(n, rng);
        const InputFisher f = input_fisher(tableau_column(t, 0), n, noise, m);
        ci.add(f.cfim);
        cj.add(f.qfim);
        if (noise != nullptr) {
            ct.add(f.jtilde);
        }
    }
    EnsembleFisher out;
    out.inputs = shots;
    out.cfim = ci.mean(shots);
    out.cfim_stderr = ci.stderr_of_mean(shots);
    out.qfim = cj.mean(shots);
    out.qfim_stderr = cj.stderr_of_mean(shots);
    if (noise != nullptr) {
        out.jtilde = ct.mean(shots);
    }
    return out;
}

RMatrix stabilizer_average_qfim(std::size_t n) {
    const auto states = stabilizer_states(n);
    Accumulator acc;
    for (const auto &s : states) {
        acc.add(qfim_hamiltonian_pure(s, n));
    }
    return acc.mean(states.size());
}

double wmse_lower_bound_w(std::size_t n) {
    const double d = std::ldexp(1.0, static_cast<int>(n));
    return (d * d - 1) / 4;
}

double noisy_lowrank_c(double q) {
    const double a = (1 - 2 * q) * (1 - 2 * q);
    return (a - q) / a;
}

double noisy_design_constant(std::size_t d, double q) {
    const double x = static_cast<double>(d);
    return (x + 2) / (x + 1) * (1 - q) * (1 - q) * (1 - 4 * q) / (2 * (2 - q));
}

void register_model_families() {
    FamilyRegistry::instance().add("hamiltonian", [](const FamilySpec &s) {
        const std::size_t n = s.get_size("n", 1);
        const std::size_t d = std::size_t{1} << n;
        const std::string input = s.get("input", "me");
        CVector psi;
        switch (parse_hamiltonian_input(input)) {
            case HamiltonianInput::MaximallyEntangled:
                psi = maximally_entangled_state(n);
                break;
            case HamiltonianInput::Stabilizer:
                psi = basis_vector(d, 0);
                break;
            case HamiltonianInput::Custom: {
                const RVector re = parse_real_list(input);
                psi.assign(re.begin(), re.end());
                break;
            }
        }
        std::optional<PauliChannel> noise;
        const std::string kind = s.get("noise", "none");
        if (kind == "depolarizing") {
            noise = PauliChannel::depolarizing(n, s.get_double("q", 0.0));
        } else if (kind != "none") {
            throw DomainError("family hamiltonian: unknown noise '" + kind + "'");
        }
        return std::make_shared<HamiltonianFamily>(n, psi, noise);
    });
}

}  // namespace rmetro
