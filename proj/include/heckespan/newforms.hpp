#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heckespan/arith.hpp"
#include "heckespan/qexp.hpp"

namespace heckespan::nf {

using arith::Int;
using arith::Rat;

// --------------------------------------------------------------------
// number field Q[x]/(g), elements as ascending coefficient vectors
// --------------------------------------------------------------------

class NumberField {
  public:
    explicit NumberField(std::vector<Rat> monic_ascending);

    unsigned degree() const { return deg_; }
    const std::vector<Rat>& minpoly() const { return g_; }

    using Elem = std::vector<Rat>;
    Elem zero() const { return Elem(deg_, Rat(0)); }
    Elem one() const;
    Elem from_rat(const Rat& r) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem scale(const Elem& a, const Rat& c) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    bool is_zero(const Elem& a) const;

    // power sums of the roots of g (Newton identities), exact
    std::vector<Rat> root_power_sums(unsigned count) const;
    // real roots of g, ascending (g must be squarefree, totally real)
    std::vector<double> real_roots() const;
    double embed(const Elem& a, double root) const;

  private:
    std::vector<Rat> g_;
    unsigned deg_;
    std::vector<std::vector<Rat>> red_;  // x^{deg+j} reduced
};

// --------------------------------------------------------------------
// newform data
// --------------------------------------------------------------------

// Galois orbit of newforms with exact eigenvalue data: a_p = h_p(theta)
// where theta is the T_{theta_prime} eigenvalue with minimal polynomial g.
struct NewformOrbit {
    uint64_t level = 1;
    unsigned weight = 0;
    std::string label;
    unsigned theta_prime = 2;
    std::vector<Rat> minpoly;               // ascending, monic
    std::map<uint64_t, std::vector<Rat>> ap;  // prime -> coords in theta

    unsigned dim() const { return minpoly.size() - 1; }
    uint64_t max_prime() const { return ap.empty() ? 0 : ap.rbegin()->first; }

    NumberField field() const { return NumberField(minpoly); }
    // a_n for 0 <= n <= prec via Hecke multiplicativity; throws
    // data_unavailable when a needed a_p is missing.
    std::vector<NumberField::Elem> an_table(unsigned prec) const;
    // rational forms Tr(theta^j a_n), j < dim
    std::vector<std::vector<Rat>> trace_forms(unsigned prec) const;
};

// One embedded newform with normalized coefficients.
struct NewformRecord {
    uint64_t level = 1;
    unsigned weight = 0;
    std::string label;
    unsigned embedding_index = 0;
    std::map<uint64_t, double> ap_hat;        // prime -> a_p / p^{(k-1)/2}
    std::map<uint64_t, Int> ap_exact;         // only for rational eigenvalues
    std::string verification;                 // "ok" or reason

    bool same_form(const NewformRecord& o) const {
        return level == o.level && weight == o.weight && label == o.label &&
               embedding_index == o.embedding_index;
    }
};

// --------------------------------------------------------------------
// verification
// --------------------------------------------------------------------

struct HeckeCheckReport {
    bool passed = true;
    std::vector<std::string> violations;
};

// Ramanujan bound at good primes (tolerance 1e-9 on ingested data).
HeckeCheckReport hecke_check(const NewformRecord& rec, unsigned k,
                             uint64_t up_to);
// exact checks: multiplicativity and prime-power recurrences
HeckeCheckReport hecke_check(const NewformOrbit& orbit, uint64_t up_to);

// --------------------------------------------------------------------
// data sources
// --------------------------------------------------------------------

class CuspSource {
  public:
    virtual ~CuspSource() = default;
    // exact orbit data; throws data_unavailable when the space is unknown
    virtual std::vector<NewformOrbit> orbits(uint64_t level,
                                             unsigned weight) const = 0;
    // per-embedding records; default derives from orbits()
    virtual std::vector<NewformRecord> records(uint64_t level,
                                               unsigned weight) const;
};

std::vector<NewformRecord> records_from_orbit(const NewformOrbit& orbit);

// Fixture directory: newforms/{N}.{k}.json and aptables/{N}.{k}.jsonl.
class FixtureSource : public CuspSource {
  public:
    explicit FixtureSource(std::string dir);
    std::vector<NewformOrbit> orbits(uint64_t level,
                                     unsigned weight) const override;
    std::vector<NewformRecord> records(uint64_t level,
                                       unsigned weight) const override;
    const std::string& dir() const { return dir_; }

  private:
    std::string dir_;
};

// HTTP client for a newform database speaking the fixture JSON schema.
// GET {base}/newforms/{level}/{weight}
class DbClient : public CuspSource {
  public:
    explicit DbClient(std::string base_url);
    std::vector<NewformOrbit> orbits(uint64_t level,
                                     unsigned weight) const override;

  private:
    std::string base_;
};

// line-per-record coefficient cache, one file per (level, weight)
class CoeffCache {
  public:
    explicit CoeffCache(std::string dir);

    std::string path_for(uint64_t level, unsigned weight) const;
    void store(const std::vector<NewformRecord>& recs);
    // returns records; corrupt lines are reported via `bad_lines`
    std::vector<NewformRecord> load(uint64_t level, unsigned weight,
                                    std::vector<std::string>* bad_lines
                                    = nullptr) const;
    std::vector<std::pair<uint64_t, unsigned>> list() const;
    void quarantine(const NewformRecord& rec, const std::string& reason);

  private:
    std::string dir_;
};

// Fetch records for (level, weight): verification via hecke_check, verified
// records written to cache, failures quarantined (not cached).
struct FetchConfig {
    const CuspSource* source = nullptr;
    CoeffCache* cache = nullptr;
    uint64_t verify_up_to = 1000;
};

std::vector<NewformRecord> lmfdb_fetch(uint64_t level, unsigned weight,
                                       const FetchConfig& config);

// orbit JSON (de)serialization shared by fixture files and the database
NewformOrbit orbit_from_json_text(const std::string& text,
                                  std::size_t orbit_index);
std::vector<NewformOrbit> orbits_from_json_text(const std::string& text,
                                                uint64_t level,
                                                unsigned weight);

}  // namespace heckespan::nf
