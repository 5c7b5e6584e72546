#include "cumulant_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace oracle {

namespace {

constexpr cplx I{0.0, 1.0};

std::string term_signature(const Term& t) {
    std::ostringstream os;
    for (const auto& m : t.mode_ops) os << (m.dag ? 'D' : 'd') << m.mode;
    os << '|';
    for (const auto& [atom, op] : t.atom_ops) os << atom << ':' << op.first << op.second << ';';
    return os.str();
}

}  // namespace

Term Term::adjoint() const {
    Term t;
    t.coeff = std::conj(coeff);
    for (auto it = mode_ops.rbegin(); it != mode_ops.rend(); ++it)
        t.mode_ops.push_back({it->mode, !it->dag});
    for (const auto& [atom, op] : atom_ops) t.atom_ops[atom] = {op.second, op.first};
    return t;
}

Expr mul(const Term& a, const Term& b) {
    Term r;
    r.coeff = a.coeff * b.coeff;
    if (r.coeff == cplx{0.0, 0.0}) return {};
    r.mode_ops = a.mode_ops;
    r.mode_ops.insert(r.mode_ops.end(), b.mode_ops.begin(), b.mode_ops.end());
    r.atom_ops = a.atom_ops;
    for (const auto& [atom, op] : b.atom_ops) {
        auto it = r.atom_ops.find(atom);
        if (it == r.atom_ops.end()) {
            r.atom_ops[atom] = op;
        } else {
            // sigma_{mu nu} sigma_{mu' nu'} = delta_{nu mu'} sigma_{mu nu'}
            if (it->second.second != op.first) return {};
            it->second = {it->second.first, op.second};
        }
    }
    return {r};
}

Expr mul(const Expr& a, const Expr& b) {
    Expr out;
    for (const auto& ta : a)
        for (const auto& tb : b) {
            Expr p = mul(ta, tb);
            out.insert(out.end(), p.begin(), p.end());
        }
    return out;
}

Expr commutator(const Expr& a, const Expr& b) {
    Expr ab = mul(a, b);
    Expr ba = mul(b, a);
    for (auto& t : ba) t.coeff = -t.coeff;
    ab.insert(ab.end(), ba.begin(), ba.end());
    return ab;
}

namespace {

// order key: a^dag < a < b^dag < b
int op_key(const ModeOp& m) { return m.mode * 2 + (m.dag ? 0 : 1); }

// Rewrite one term's mode string to normal order, producing contraction terms.
void normal_order_term(Term t, Expr& out) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < t.mode_ops.size(); ++i) {
            const ModeOp& l = t.mode_ops[i];
            const ModeOp& r = t.mode_ops[i + 1];
            if (op_key(l) <= op_key(r)) continue;
            if (l.mode == r.mode && !l.dag && r.dag) {
                // a a^dag = a^dag a + 1
                Term swapped = t;
                std::swap(swapped.mode_ops[i], swapped.mode_ops[i + 1]);
                Term contracted = t;
                contracted.mode_ops.erase(contracted.mode_ops.begin() + i,
                                          contracted.mode_ops.begin() + i + 2);
                normal_order_term(std::move(swapped), out);
                normal_order_term(std::move(contracted), out);
                return;
            }
            // different modes commute
            std::swap(t.mode_ops[i], t.mode_ops[i + 1]);
            changed = true;
        }
    }
    out.push_back(std::move(t));
}

}  // namespace

Expr normal_form(const Expr& e) {
    Expr ordered;
    for (const auto& t : e) normal_order_term(t, ordered);

    std::map<std::string, Term> merged;
    double cmax = 0;
    for (const auto& t : ordered) {
        auto key = term_signature(t);
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(key, t);
        else
            it->second.coeff += t.coeff;
        cmax = std::max(cmax, std::abs(t.coeff));
    }
    Expr out;
    for (auto& [key, t] : merged)
        if (std::abs(t.coeff) > 1e-14 * cmax) out.push_back(t);
    return out;
}

namespace {

struct Factor {
    bool is_mode;
    ModeOp mode;        // valid when is_mode
    int mu = 0, nu = 0; // valid when atomic
};

int factor_charge(const Factor& f) {
    if (f.is_mode) return f.mode.dag ? 1 : -1;
    return level_charge(f.mu) - level_charge(f.nu);
}

cplx eval_single(const Factor& f, const StateLookup& look) {
    if (f.is_mode) return 0.0;  // first moments vanish by U(1) symmetry
    if (factor_charge(f) != 0) return 0.0;
    return look.single_atom(f.mu, f.nu);
}

cplx eval_pair(const Factor& f1, const Factor& f2, const StateLookup& look) {
    if (factor_charge(f1) + factor_charge(f2) != 0) return 0.0;
    if (f1.is_mode && f2.is_mode) {
        // same-mode pairs arrive normal ordered; different modes commute
        if (f1.mode.mode == f2.mode.mode && !f1.mode.dag)
            throw std::logic_error("oracle: same-mode pair not normal ordered");
        const Factor& cr = f1.mode.dag ? f1 : f2;
        const Factor& an = f1.mode.dag ? f2 : f1;
        return look.mode_pair(cr.mode.mode, an.mode.mode);
    }
    if (f1.is_mode != f2.is_mode) {
        const Factor& m = f1.is_mode ? f1 : f2;
        const Factor& at = f1.is_mode ? f2 : f1;
        if (!m.mode.dag) {
            // <sigma_mu_g . mode>
            if (at.nu != 0) throw std::logic_error("oracle: unstored atom-mode pair");
            return look.atom_mode(at.mu, m.mode.mode);
        }
        // <mode^dag . sigma_g_mu> = conj(<sigma_mu_g . mode>)
        if (at.mu != 0) throw std::logic_error("oracle: unstored atom-mode pair");
        return std::conj(look.atom_mode(at.nu, m.mode.mode));
    }
    // two distinct atoms; charges are (+1,-1) or (-1,+1) here (0,0 pairs are
    // not part of the closed set and must never be reached with weight)
    const Factor& raise = factor_charge(f1) == 1 ? f1 : f2;
    const Factor& lower = factor_charge(f1) == 1 ? f2 : f1;
    if (factor_charge(raise) != 1 || raise.nu != 0 || lower.mu != 0)
        throw std::logic_error("oracle: unstored two-atom pair");
    return look.two_atom(raise.mu, lower.nu);
}

cplx eval_term(const Term& t, const StateLookup& look) {
    std::vector<Factor> fs;
    for (const auto& m : t.mode_ops) fs.push_back({true, m, 0, 0});
    for (const auto& [atom, op] : t.atom_ops)
        fs.push_back({false, {}, op.first, op.second});

    const size_t n = fs.size();
    if (n == 0) return t.coeff;
    if (n == 1) return t.coeff * eval_single(fs[0], look);
    if (n == 2) return t.coeff * eval_pair(fs[0], fs[1], look);
    if (n == 3) {
        // second-order cumulant: <ABC> = <A><BC> + <B><AC> + <C><AB> - 2<A><B><C>
        cplx v = 0.0;
        const int pairings[3][3] = {{0, 1, 2}, {1, 0, 2}, {2, 0, 1}};
        for (const auto& pr : pairings) {
            cplx s = eval_single(fs[pr[0]], look);
            if (s == cplx{0.0, 0.0}) continue;
            v += s * eval_pair(fs[pr[1]], fs[pr[2]], look);
        }
        cplx prod = eval_single(fs[0], look) * eval_single(fs[1], look) * eval_single(fs[2], look);
        v -= 2.0 * prod;
        return t.coeff * v;
    }
    throw std::logic_error("oracle: term of order > 3 survived; system not closed");
}

Term instantiate(const Term& t, int atom) {
    Term r = t;
    auto it = r.atom_ops.find(-1);
    if (it != r.atom_ops.end()) {
        auto op = it->second;
        r.atom_ops.erase(it);
        r.atom_ops[atom] = op;
    }
    return r;
}

// rate * (J^dag O J - 1/2 {J^dag J, O})
Expr dissipator_adjoint(double rate, const Term& jump, const Expr& tracked) {
    Term jd = jump.adjoint();
    Expr out = mul(mul(Expr{jd}, tracked), Expr{jump});
    Expr jdj = mul(jd, jump);
    Expr anti = mul(jdj, tracked);
    Expr anti2 = mul(tracked, jdj);
    anti.insert(anti.end(), anti2.begin(), anti2.end());
    for (auto& t : anti) t.coeff *= -0.5;
    out.insert(out.end(), anti.begin(), anti.end());
    for (auto& t : out) t.coeff *= rate;
    return out;
}

}  // namespace

cplx correlator_rhs(const ModelDef& model, const Expr& tracked, const StateLookup& look) {
    std::set<int> support;
    for (const auto& t : tracked)
        for (const auto& [atom, op] : t.atom_ops) support.insert(atom);
    int fresh = support.empty() ? 1 : (*support.rbegin() + 1);

    Expr rhs;

    auto add_hamiltonian = [&](const Expr& h, double multiplicity) {
        Expr c = commutator(h, tracked);
        for (auto& t : c) t.coeff *= I * multiplicity;
        rhs.insert(rhs.end(), c.begin(), c.end());
    };

    add_hamiltonian(model.h_fixed, 1.0);
    for (const auto& h : model.h_per_atom) {
        for (int atom : support) add_hamiltonian(Expr{instantiate(h, atom)}, 1.0);
        // all atoms outside the support contribute identically by permutation symmetry
        add_hamiltonian(Expr{instantiate(h, fresh)},
                        model.n_atoms - static_cast<double>(support.size()));
    }

    for (const auto& j : model.jumps) {
        if (j.per_atom) {
            // jumps on atoms outside the support commute through and cancel exactly
            for (int atom : support) {
                Expr d = dissipator_adjoint(j.rate, instantiate(j.op, atom), tracked);
                rhs.insert(rhs.end(), d.begin(), d.end());
            }
        } else {
            Expr d = dissipator_adjoint(j.rate, j.op, tracked);
            rhs.insert(rhs.end(), d.begin(), d.end());
        }
    }

    Expr nf = normal_form(rhs);
    cplx v = 0.0;
    for (const auto& t : nf) v += eval_term(t, look);
    return v;
}

}  // namespace oracle
