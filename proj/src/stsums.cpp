#include "heckespan/stsums.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "heckespan/errors.hpp"
#include "heckespan/modforms.hpp"

namespace heckespan::stsums {

PhiSpec PhiSpec::sym2(nf::NewformRecord f, double ell) {
    PhiSpec s;
    s.variant = PhiVariant::Sym2;
    s.weight = f.weight;
    s.f = std::move(f);
    s.shift = ell;
    return s;
}

PhiSpec PhiSpec::tensor(nf::NewformRecord f, nf::NewformRecord g,
                        double ell) {
    if (f.same_form(g))
        throw usage_error("tensor constituents must be distinct forms");
    PhiSpec s;
    s.variant = PhiVariant::Tensor;
    s.weight = f.weight;
    s.f = std::move(f);
    s.g = std::move(g);
    s.shift = ell;
    return s;
}

PhiSpec PhiSpec::character(chars::DirichletCharacter chi, double ell) {
    if (chi.conductor() <= 1)
        throw usage_error("character member requires conductor > 1");
    PhiSpec s;
    s.variant = PhiVariant::Char;
    s.chi = std::move(chi);
    s.shift = ell;
    return s;
}

PhiSpec PhiSpec::twist(nf::NewformRecord f, chars::DirichletCharacter chi,
                       double ell) {
    PhiSpec s;
    s.variant = PhiVariant::Twist;
    s.weight = f.weight;
    s.f = std::move(f);
    s.chi = std::move(chi);
    s.shift = ell;
    return s;
}

uint64_t PhiSpec::bad_level() const {
    switch (variant) {
        case PhiVariant::Sym2: return f.level;
        case PhiVariant::Tensor: return f.level * g.level;
        case PhiVariant::Char: return chi.conductor();
        case PhiVariant::Twist: return f.level * chi.conductor();
    }
    return 1;
}

unsigned PhiSpec::mu() const {
    switch (variant) {
        case PhiVariant::Sym2: return 3;
        case PhiVariant::Tensor: return 4;
        case PhiVariant::Char: return 1;
        case PhiVariant::Twist: return 2;
    }
    return 0;
}

std::string PhiSpec::describe() const {
    switch (variant) {
        case PhiVariant::Sym2: return "sym2:" + f.label;
        case PhiVariant::Tensor: return "tensor:" + f.label + "*" + g.label;
        case PhiVariant::Char:
            return "char:mod" + std::to_string(chi.modulus());
        case PhiVariant::Twist:
            return "twist:" + f.label + "*mod" +
                   std::to_string(chi.modulus());
    }
    return "?";
}

std::pair<cplx, cplx> satake_params(double a_hat) {
    if (std::abs(a_hat) > 2.0 + 1e-12)
        throw usage_error("satake_params: |a_hat| must be <= 2");
    double c = a_hat / 2.0;
    double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    return {cplx{c, s}, cplx{c, -s}};
}

namespace {

double ap_hat_of(const nf::NewformRecord& rec, uint64_t p) {
    auto it = rec.ap_hat.find(p);
    if (it == rec.ap_hat.end())
        throw data_unavailable("missing a_p for " + rec.label + " at p = " +
                                   std::to_string(p),
                               (int)rec.level, (int)rec.weight);
    return it->second;
}

// Satake parameters of the local factor of phi at a good prime
std::vector<cplx> local_satakes(const PhiSpec& phi, uint64_t p) {
    switch (phi.variant) {
        case PhiVariant::Sym2: {
            auto [a, ab] = satake_params(ap_hat_of(phi.f, p));
            return {a * a, cplx{1.0, 0.0}, ab * ab};
        }
        case PhiVariant::Tensor: {
            auto [a, ab] = satake_params(ap_hat_of(phi.f, p));
            auto [b, bb] = satake_params(ap_hat_of(phi.g, p));
            return {a * b, a * bb, ab * b, ab * bb};
        }
        case PhiVariant::Char:
            return {phi.chi.cvalue(p)};
        case PhiVariant::Twist: {
            auto [a, ab] = satake_params(ap_hat_of(phi.f, p));
            cplx c = phi.chi.cvalue(p);
            return {c * a, c * ab};
        }
    }
    return {};
}

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

}  // namespace

cplx phi_prime_coeff(const PhiSpec& phi, uint64_t p) {
    if (phi.bad_level() % p == 0)
        throw usage_error("phi_prime_coeff: bad prime p = " +
                          std::to_string(p) + " for " + phi.describe());
    switch (phi.variant) {
        case PhiVariant::Sym2: {
            double a = ap_hat_of(phi.f, p);
            return {a * a - 1.0, 0.0};
        }
        case PhiVariant::Tensor:
            return {ap_hat_of(phi.f, p) * ap_hat_of(phi.g, p), 0.0};
        case PhiVariant::Char:
            return phi.chi.cvalue(p);
        case PhiVariant::Twist:
            return phi.chi.cvalue(p) * ap_hat_of(phi.f, p);
    }
    return {};
}

SumSeries psi_phi(const PhiSpec& phi, double X, const arith::PrimeTable& pt) {
    SumSeries out;
    out.cutoff = X;
    Kahan re, im;
    uint64_t bad = phi.bad_level();
    for (uint64_t p : pt.primes) {
        if ((double)p > X) break;
        if (bad % p == 0) continue;  // bad primes omitted entirely
        auto sat = local_satakes(phi, p);
        double lp = std::log((double)p);
        double pl = std::pow((double)p, phi.shift);  // p^ell
        double pm = (double)p;                        // p^m
        double plm = pl;                              // p^{ell m}
        for (unsigned m = 1; pm <= X; ++m) {
            cplx pow_sum{0.0, 0.0};
            for (const auto& a : sat) pow_sum += std::pow(a, (int)m);
            cplx term = pow_sum * lp * plm;
            re.add(term.real());
            im.add(term.imag());
            ++out.term_count;
            out.max_abs_partial = std::max(
                out.max_abs_partial, std::hypot(re.s, im.s));
            pm *= (double)p;
            plm *= pl;
        }
    }
    out.value = re.s;
    out.value_im = im.s;
    return out;
}

namespace {

SumSeries prime_sum(const PhiSpec& phi, double X, const arith::PrimeTable& pt,
                    bool with_log) {
    SumSeries out;
    out.cutoff = X;
    Kahan re, im;
    uint64_t bad = phi.bad_level();
    for (uint64_t p : pt.primes) {
        if ((double)p > X) break;
        if (bad % p == 0) continue;
        cplx a = phi_prime_coeff(phi, p);
        double w = std::pow((double)p, phi.shift);
        if (with_log) w *= std::log((double)p);
        re.add(a.real() * w);
        im.add(a.imag() * w);
        ++out.term_count;
        out.max_abs_partial =
            std::max(out.max_abs_partial, std::hypot(re.s, im.s));
    }
    out.value = re.s;
    out.value_im = im.s;
    return out;
}

}  // namespace

SumSeries theta_phi(const PhiSpec& phi, double X,
                    const arith::PrimeTable& pt) {
    return prime_sum(phi, X, pt, true);
}

SumSeries S_phi(const PhiSpec& phi, double X, const arith::PrimeTable& pt) {
    return prime_sum(phi, X, pt, false);
}

double E_sum(uint64_t M, unsigned k, double X, const arith::PrimeTable& pt) {
    return arith::prime_power_sum(M, 1.0 - (double)k, X, pt) +
           2.0 * arith::prime_power_sum(M, 0.0, X, pt);
}

namespace {

// |sum over p <= X, p coprime to M of chi(p) p^{(k-1)/2} (optionally a_hat)|
double abs_char_sum(const chars::DirichletCharacter& chi, uint64_t M,
                    unsigned k, double X, const arith::PrimeTable& pt,
                    const nf::NewformRecord* form) {
    Kahan re, im;
    for (uint64_t p : pt.primes) {
        if ((double)p > X) break;
        if (M % p == 0) continue;
        cplx c = chi.cvalue(p);
        double w = std::pow((double)p, (k - 1) / 2.0);
        if (form) w *= ap_hat_of(*form, p);
        re.add(c.real() * w);
        im.add(c.imag() * w);
    }
    return std::hypot(re.s, im.s);
}

std::vector<nf::NewformRecord> newform_pool(uint64_t M, unsigned k,
                                            const nf::CuspSource& src) {
    std::vector<nf::NewformRecord> forms;
    for (uint64_t d : arith::divisors(M)) {
        if (modforms::dim_cusp_new(k, d) == 0) continue;
        for (auto& r : src.records(d, k)) forms.push_back(std::move(r));
    }
    return forms;
}

}  // namespace

MaxSum F_sum(uint64_t M, unsigned k, double X, const arith::PrimeTable& pt) {
    MaxSum out;
    out.empty = true;
    for (const auto& chi : chars::characters_mod(M)) {
        if (chi.conductor() <= 1) continue;
        out.empty = false;
        double v = abs_char_sum(chi, M, k, X, pt, nullptr);
        if (v > out.value) {
            out.value = v;
            out.argmax = "chi mod " + std::to_string(M);
        }
    }
    return out;
}

MaxSum G_sum(uint64_t M, unsigned k, double X,
             const nf::CuspSource& cusp_source, const arith::PrimeTable& pt) {
    MaxSum out;
    out.empty = true;
    auto forms = newform_pool(M, k, cusp_source);
    for (const auto& chi : chars::characters_mod(M)) {
        if (chi.conductor() <= 1) continue;
        for (const auto& f : forms) {
            out.empty = false;
            double v = abs_char_sum(chi, M, k, X, pt, &f);
            if (v > out.value) {
                out.value = v;
                out.argmax = f.label + " twist";
            }
        }
    }
    return out;
}

HResult H_sum(uint64_t M, unsigned k, double X,
              const nf::CuspSource& cusp_source, const arith::PrimeTable& pt) {
    HResult out;
    auto forms = newform_pool(M, k, cusp_source);
    if (forms.empty()) {
        out.empty = true;
        return out;
    }
    for (std::size_t i = 0; i < forms.size(); ++i) {
        Kahan lit, nrm;
        for (uint64_t p : pt.primes) {
            if ((double)p > X) break;
            if (M % p == 0) continue;
            double a = ap_hat_of(forms[i], p);
            lit.add(4.0 * a * a - 1.0);
            nrm.add(a * a - 1.0);
        }
        if (std::abs(lit.s) > out.literal) {
            out.literal = std::abs(lit.s);
            out.argmax = "U2 " + forms[i].label;
        }
        out.normalized = std::max(out.normalized, std::abs(nrm.s));
    }
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = i + 1; j < forms.size(); ++j) {
            Kahan acc;
            for (uint64_t p : pt.primes) {
                if ((double)p > X) break;
                if (M % p == 0) continue;
                acc.add(ap_hat_of(forms[i], p) * ap_hat_of(forms[j], p));
            }
            double v = std::abs(acc.s);
            if (v > out.literal) {
                out.literal = v;
                out.argmax = forms[i].label + "*" + forms[j].label;
            }
            out.normalized = std::max(out.normalized, v);
        }
    return out;
}

STReport check_effectiveST(uint64_t M, unsigned k, double X,
                           const nf::CuspSource& cusp_source,
                           const arith::PrimeTable& pt) {
    if (X < 17.33)
        throw usage_error("check_effectiveST requires X >= 17.33");
    STReport rep;
    rep.M = M;
    rep.k = k;
    rep.X = X;
    rep.E = E_sum(M, k, X, pt);
    rep.F = F_sum(M, k, X, pt);
    rep.G = G_sum(M, k, X, cusp_source, pt);
    rep.H = H_sum(M, k, X, cusp_source, pt);
    rep.alpha = 2605.0 + 87.0 * k + (248.0 + 6.0 * k) * std::log((double)M);
    double lx = std::log(X);
    rep.bound_FG = rep.alpha * std::pow(X, k / 2.0) * lx;
    rep.bound_H = rep.alpha * std::sqrt(X) * lx;
    rep.ratio_F = rep.F.value / rep.bound_FG;
    rep.ratio_G = rep.G.value / rep.bound_FG;
    rep.ratio_H_literal = rep.H.literal / rep.bound_H;
    rep.ratio_H_normalized = rep.H.normalized / rep.bound_H;
    rep.pass = rep.ratio_F <= 1.0 && rep.ratio_G <= 1.0 &&
               rep.ratio_H_literal <= 1.0 && rep.ratio_H_normalized <= 1.0;
    return rep;
}

}  // namespace heckespan::stsums
