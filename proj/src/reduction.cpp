#include "fermatzeta/reduction.hpp"

#include <numeric>

#include "fermatzeta/error.hpp"

namespace fermatzeta {

bool is_homogeneous(const FamilyDescriptor& f, const PoleForm& form) {
    if (form.b.size() != f.num_vars()) return false;
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < form.b.size(); ++i) s += f.weights[i] * (form.b[i] + 1);
    return s == form.t * f.degree;
}

ReductionStep reduce_step(const FamilyDescriptor& f, const PoleForm& form, std::size_t i) {
    const std::uint64_t di = f.exponent_degree(i);
    if (i >= form.b.size() || form.b[i] < di)
        throw Error(ErrorKind::invalid_argument, "NotReducible", "exponent b_i is smaller than d_i");
    if (form.t < 2) throw Error(ErrorKind::invalid_argument, "PoleOrderTooLow", "pole order would drop below 1");
    ReductionStep step;
    step.multiplier = mpq_class(mpz_class(form.b[i] + 1 - di), mpz_class((form.t - 1) * di));
    step.multiplier.canonicalize();
    step.form = form;
    step.form.b[i] -= di;
    step.form.t -= 1;
    return step;
}

mpq_class pochhammer(const mpq_class& a, std::uint64_t m) {
    mpq_class r = 1;
    for (std::uint64_t j = 0; j < m; ++j) r *= a + j;
    return r;
}

ReducedForm complete_reduction(const FamilyDescriptor& f, const PoleForm& form) {
    if (!is_homogeneous(f, form))
        throw Error(ErrorKind::invalid_argument, "NotHomogeneous", "sum w_i (b_i + 1) must equal t d");
    ReducedForm out;
    out.c.resize(form.b.size());
    std::uint64_t lowered = 0;
    mpq_class num = 1;
    for (std::size_t i = 0; i < form.b.size(); ++i) {
        const std::uint64_t di = f.exponent_degree(i);
        const std::uint64_t qi = form.b[i] / di, ci = form.b[i] % di;
        out.c[i] = static_cast<std::uint32_t>(ci);
        if (ci == di - 1) out.zero = true;
        lowered += qi;
        mpq_class base(mpz_class((ci + 1) * f.weights[i]), mpz_class(f.degree));
        base.canonicalize();
        num *= pochhammer(base, qi);
    }
    out.s = form.t - lowered;
    if (out.zero) {
        out.rho = 0;
        return out;
    }
    out.rho = num / pochhammer(mpq_class(mpz_class(out.s)), lowered);
    return out;
}

Discriminant discriminant(const FamilyDescriptor& f, std::uint32_t p) {
    Discriminant D;
    std::uint32_t g = 0;
    for (std::size_t i = 0; i < f.num_vars(); ++i) {
        if (f.deformation[i] == 0) continue;
        if (p != 0 && f.deformation[i] % p == 0) {
            D.always_smooth = true;
            continue;
        }
        g = std::gcd(g, f.weights[i] * f.deformation[i]);
    }
    if (D.always_smooth) return D;
    D.g = g;
    D.order = f.degree / g;
    mpz_class num, den = 1;
    mpz_ui_pow_ui(num.get_mpz_t(), f.degree, D.order);
    if (D.order % 2) num = -num;
    for (std::size_t i = 0; i < f.num_vars(); ++i) {
        if (f.deformation[i] == 0) continue;
        const std::uint32_t aw = f.weights[i] * f.deformation[i];
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), aw, aw / g);
        den *= t;
    }
    D.value = mpq_class(num, den);
    D.value.canonicalize();
    return D;
}

bool quasi_smooth(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda) {
    if (f.degree % field.p == 0)
        throw Error(ErrorKind::gate, "CharacteristicDividesDegree", "p divides the degree");
    const Discriminant D = discriminant(f, field.p);
    if (D.always_smooth) return true;
    mpz_class num = D.value.get_num(), den = D.value.get_den();
    const mpz_class pz(field.p);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
        throw Error(ErrorKind::gate, "CharacteristicDividesWeight", "p divides a weight");
    mpz_class v = num * inv;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
    return field.pow(lambda, D.order) != field.from_int(v.get_si());
}

bool quasi_smooth(const FamilyDescriptor& f, const mpq_class& lambda) {
    const Discriminant D = discriminant(f, 0);
    mpq_class lp = 1;
    for (std::uint32_t i = 0; i < D.order; ++i) lp *= lambda;
    return lp != D.value;
}

}  // namespace fermatzeta
