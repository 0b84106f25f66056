#include "rydgrover/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rydgrover/kernels.hpp"

namespace rydgrover {

namespace {
constexpr double kUnitaryTol = 1e-12;

AtomSpec make_spec(int num_levels, std::initializer_list<std::pair<LevelRole, int>> roles) {
    AtomSpec spec;
    spec.num_levels = num_levels;
    for (const auto& [role, lvl] : roles) spec.role_level[static_cast<int>(role)] = lvl;
    spec.validate();
    return spec;
}
} // namespace

AtomSpec AtomSpec::qubit() {
    return make_spec(3, {{LevelRole::Ground0, 0}, {LevelRole::Ground1, 1}, {LevelRole::RydR, 2}});
}

AtomSpec AtomSpec::two_species() {
    return make_spec(4, {{LevelRole::Ground0, 0},
                         {LevelRole::Ground1, 1},
                         {LevelRole::RydS, 2},
                         {LevelRole::RydR, 3}});
}

AtomSpec AtomSpec::tree_ancilla() {
    return make_spec(4, {{LevelRole::Ground0, 0},
                         {LevelRole::Ground1, 1},
                         {LevelRole::Logical2, 2},
                         {LevelRole::RydR, 3}});
}

void AtomSpec::validate() const {
    if (num_levels < 2) throw std::invalid_argument("AtomSpec: need at least 2 levels");
    if (!has(LevelRole::Ground0) || !has(LevelRole::Ground1))
        throw std::invalid_argument("AtomSpec: ground0 and ground1 are required");
    for (int r = 0; r < kRoleCount; ++r) {
        const int lvl = role_level[static_cast<std::size_t>(r)];
        if (lvl < -1 || lvl >= num_levels) throw std::invalid_argument("AtomSpec: role level out of range");
        for (int s = r + 1; s < kRoleCount; ++s)
            if (lvl >= 0 && lvl == role_level[static_cast<std::size_t>(s)])
                throw std::invalid_argument("AtomSpec: two roles on one level");
    }
}

RegisterState::RegisterState(std::vector<AtomSpec> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("RegisterState: empty register");
    strides_.resize(atoms_.size());
    std::size_t dim = 1;
    for (std::size_t i = atoms_.size(); i-- > 0;) {
        atoms_[i].validate();
        strides_[i] = dim;
        dim *= static_cast<std::size_t>(atoms_[i].num_levels);
    }
    amps_.assign(dim, Complex{});
}

std::size_t RegisterState::flat_index(const BasisLabel& label) const {
    if (label.size() != atoms_.size())
        throw std::invalid_argument("flat_index: label has " + std::to_string(label.size()) +
                                    " digits for " + std::to_string(atoms_.size()) + " atoms");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (label[i] < 0 || label[i] >= atoms_[i].num_levels)
            throw std::invalid_argument("flat_index: digit out of range for atom " + std::to_string(i));
        idx += static_cast<std::size_t>(label[i]) * strides_[i];
    }
    return idx;
}

int RegisterState::digit(std::size_t flat, int atom) const {
    const auto a = static_cast<std::size_t>(atom);
    return static_cast<int>((flat / strides_[a]) % static_cast<std::size_t>(atoms_[a].num_levels));
}

double RegisterState::norm_sq() const { return kernels::norm_sq(amps_.data(), amps_.size()); }

RegisterState basis_state(std::vector<AtomSpec> atoms, const BasisLabel& label) {
    RegisterState state(std::move(atoms));
    state.amp(state.flat_index(label)) = 1.0;
    return state;
}

RegisterState product_state(std::vector<AtomSpec> atoms,
                            const std::vector<std::vector<Complex>>& per_atom) {
    RegisterState state(std::move(atoms));
    if (per_atom.size() != state.atoms().size())
        throw std::invalid_argument("product_state: one amplitude vector per atom required");
    for (std::size_t i = 0; i < per_atom.size(); ++i)
        if (per_atom[i].size() != static_cast<std::size_t>(state.atoms()[i].num_levels))
            throw std::invalid_argument("product_state: wrong vector length for atom " + std::to_string(i));
    auto amps = state.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        Complex v = 1.0;
        for (int a = 0; a < state.num_atoms(); ++a) v *= per_atom[static_cast<std::size_t>(a)][static_cast<std::size_t>(state.digit(idx, a))];
        amps[idx] = v;
    }
    return state;
}

RegisterState uniform_qubit_state(int k) {
    if (k < 1) throw std::invalid_argument("uniform_qubit_state: k must be >= 1");
    const AtomSpec spec = AtomSpec::qubit();
    const double amp = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<Complex>> per_atom(
        static_cast<std::size_t>(k),
        {Complex{amp}, Complex{amp}, Complex{}});
    return product_state(std::vector<AtomSpec>(static_cast<std::size_t>(k), spec), per_atom);
}

Complex inner(const RegisterState& a, const RegisterState& b) {
    if (!a.same_structure(b)) throw std::invalid_argument("inner: register shape mismatch");
    return kernels::dot(a.amplitudes().data(), b.amplitudes().data(), a.dim());
}

double fidelity_mod_phase(const RegisterState& a, const RegisterState& b) {
    const double na = a.norm_sq();
    const double nb = b.norm_sq();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::norm(inner(a, b)) / (na * nb);
}

double marginal_population(const RegisterState& state, int atom, int level) {
    if (atom < 0 || atom >= state.num_atoms())
        throw std::invalid_argument("marginal_population: atom index out of range");
    if (level < 0 || level >= state.atoms()[static_cast<std::size_t>(atom)].num_levels)
        throw std::invalid_argument("marginal_population: level index out of range");
    const auto amps = state.amplitudes();
    const std::size_t stride = state.stride(atom);
    const auto dim_a = static_cast<std::size_t>(state.atoms()[static_cast<std::size_t>(atom)].num_levels);
    double acc = 0.0;
    for (std::size_t idx = 0; idx < amps.size(); ++idx)
        if ((idx / stride) % dim_a == static_cast<std::size_t>(level)) acc += std::norm(amps[idx]);
    return acc;
}

namespace {

kernels::BlockadeMask resolve_condition(const RegisterState& state, int target,
                                        const BlockadeCondition& cond) {
    kernels::BlockadeMask mask;
    mask.entries.reserve(cond.atoms.size());
    for (const int a : cond.atoms) {
        if (a < 0 || a >= state.num_atoms())
            throw std::invalid_argument("blockade condition: atom index out of range");
        if (a == target)
            throw std::invalid_argument("blockade condition: target atom cannot block itself");
        const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(a)];
        std::uint32_t lm = 0;
        for (const int lvl : cond.levels) {
            if (lvl < 0 || lvl >= 32) throw std::invalid_argument("blockade condition: bad level");
            if (lvl < spec.num_levels) lm |= 1u << lvl;
        }
        if (lm != 0) mask.entries.push_back({state.stride(a), spec.num_levels, lm});
    }
    return mask;
}

} // namespace

void apply_block_unitary(RegisterState& state, int atom, const CMatrix& block,
                         std::span<const int> levels, const BlockadeCondition* cond) {
    if (atom < 0 || atom >= state.num_atoms())
        throw std::invalid_argument("apply_block_unitary: atom index out of range");
    const AtomSpec& spec = state.atoms()[static_cast<std::size_t>(atom)];
    const int d = static_cast<int>(levels.size());
    if (block.rows() != d || block.cols() != d)
        throw std::invalid_argument("apply_block_unitary: block shape does not match levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 0 || levels[i] >= spec.num_levels)
            throw std::invalid_argument("apply_block_unitary: level out of range");
        for (std::size_t j = i + 1; j < levels.size(); ++j)
            if (levels[i] == levels[j]) throw std::invalid_argument("apply_block_unitary: duplicate level");
    }
    if (!block.is_unitary(kUnitaryTol))
        throw std::invalid_argument("apply_block_unitary: block is not unitary");

    kernels::BlockadeMask mask;
    if (cond != nullptr) mask = resolve_condition(state, atom, *cond);

    kernels::apply_block(state.amplitudes().data(), state.dim(), state.stride(atom), spec.num_levels,
                         block.data(), levels.data(), d, mask.empty() ? nullptr : &mask);
}

} // namespace rydgrover
