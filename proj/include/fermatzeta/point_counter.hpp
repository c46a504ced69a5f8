#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fermatzeta/finite_field.hpp"
#include "fermatzeta/monomial.hpp"

namespace fermatzeta {

enum class CountStrategy { eliminate_last, full_scan };

struct CountOptions {
    CountStrategy strategy = CountStrategy::eliminate_last;
    unsigned jobs = 1;
    std::uint64_t max_evaluations = 100000000;  // q^{s n} cap
};

struct PointCount {
    std::uint64_t s = 1;
    mpz_class cone;        // #{x in F_{q^s}^{n+1} : F(x) = 0}, origin included
    mpz_class projective;  // #X(F_{q^s})
    mpz_class ambient;     // #P(F_{q^s}) counted the same way
    mpz_class open;        // #U(F_{q^s}) = ambient - projective
    bool weighted_caveat = false;  // orbit count of the weighted G_m action
};

/// Counts over F_{q^s} where `field` is F_q and lambda is in F_q.
PointCount count_points(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda, std::uint64_t s,
                        const CountOptions& opt = {});

/// Only the affine cone count, over the given field directly.
mpz_class count_affine_cone(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda,
                            const CountOptions& opt = {});

/// Result of reconstructing det(1 - Frob t | H^{n-1}_prim) from counts of X.
struct CountZeta {
    bool determined = false;
    std::vector<mpz_class> numerator;  // c_0 = 1, ..., c_D
    std::vector<std::string> residuals;  // unused counts minus predictions, or reasons
    std::string reason;
};

/// Newton identities on p_s = (-1)^n (sum_{i<n} q^{is} - #X_s), completed by the functional
/// equation c_{D-i} = eps q^{(n-1)(D/2 - i)} c_i. eps = 1 for odd n - 1; for even n - 1 it must
/// be pinned down by the counts. Extra counts are checked against the result.
CountZeta zeta_from_counts(const std::vector<mpz_class>& counts, unsigned n, std::uint64_t q, std::size_t degree);

/// Count table cache: one JSON file per directory, keyed by family, q, lambda and s.
class CountCache {
public:
    explicit CountCache(std::filesystem::path dir);
    std::optional<PointCount> get(const FamilyDescriptor& f, std::uint64_t q, FqElem lambda, std::uint64_t s) const;
    void put(const FamilyDescriptor& f, std::uint64_t q, FqElem lambda, const PointCount& c);

private:
    std::filesystem::path file_;
    nlohmann::json data_;
    static std::string key(const FamilyDescriptor& f, std::uint64_t q, FqElem lambda, std::uint64_t s);
};

/// count_points through the cache when one is given.
PointCount cached_count(CountCache* cache, const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda,
                        std::uint64_t s, const CountOptions& opt = {});

nlohmann::json count_to_json(const PointCount& c);

}  // namespace fermatzeta
