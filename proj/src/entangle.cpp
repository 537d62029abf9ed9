#include "ell/entangle.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace ell {

namespace {

std::vector<i64> combined_divisors(const EntanglementSpec& spec) {
    std::vector<i64> d;
    for (const auto& r : spec.relations)
        d.insert(d.end(), r.target_divisors.begin(), r.target_divisors.end());
    return d;
}

// concatenated psi vector of component i, element j
std::vector<std::vector<i64>> component_psi(const EntanglementSpec& spec,
                                            std::size_t i) {
    std::size_t dim = combined_divisors(spec).size();
    std::vector<std::vector<i64>> out(spec.components[i].group.size(),
                                      std::vector<i64>(dim, 0));
    std::size_t off = 0;
    for (const auto& r : spec.relations) {
        if (i < r.maps.size() && !r.maps[i].empty()) {
            for (std::size_t j = 0; j < out.size(); ++j)
                for (std::size_t k = 0; k < r.target_divisors.size(); ++k)
                    out[j][off + k] = r.maps[i][j][k];
        }
        off += r.target_divisors.size();
    }
    return out;
}

// closure of a set of generators inside the abelian target
std::set<std::vector<i64>> abelian_span(const FiniteAbelianGroup& t,
                                        const std::set<std::vector<i64>>& gens) {
    std::set<std::vector<i64>> seen{t.zero()};
    std::vector<std::vector<i64>> frontier{t.zero()};
    while (!frontier.empty()) {
        std::vector<std::vector<i64>> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                auto y = t.add(x, g);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen;
}

std::vector<i64> canonicalize_divisors(std::vector<i64> d) {
    // elementary divisor chain from a list of cyclic orders
    std::map<i64, std::vector<int>> powers;  // prime -> exponents, desc
    for (i64 x : d)
        for (auto [p, e] : factorize(x)) powers[p].push_back(e);
    std::size_t k = 0;
    for (auto& [p, v] : powers) {
        std::sort(v.rbegin(), v.rend());
        k = std::max(k, v.size());
    }
    std::vector<i64> out(k, 1);
    for (auto& [p, v] : powers)
        for (std::size_t i = 0; i < v.size(); ++i) {
            i64 pe = 1;
            for (int j = 0; j < v[i]; ++j) pe *= p;
            out[i] *= pe;
        }
    std::reverse(out.begin(), out.end());  // increasing chain d1 | d2 | ...
    return out;
}

}  // namespace

PhiGroup build_phi(const EntanglementSpec& spec) {
    for (std::size_t i = 0; i < spec.components.size(); ++i)
        for (std::size_t j = 0; j < spec.components.size(); ++j)
            if (i != j && std::gcd(spec.components[i].prime, spec.components[j].prime) != 1)
                throw std::invalid_argument("component primes not distinct");
    PhiGroup phi;
    phi.group.divisors = combined_divisors(spec);
    for (std::size_t i = 0; i < spec.components.size(); ++i)
        phi.component_maps.push_back(component_psi(spec, i));

    // homomorphism check (exhaustive for small components, sampled otherwise)
    std::mt19937_64 rng(12345);
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const auto& g = spec.components[i].group;
        const auto& psi = phi.component_maps[i];
        auto check = [&](std::size_t x, std::size_t y) {
            Mat prod = g.element(x).mul(g.element(y));
            if (psi[g.index_of(prod)] != phi.group.add(psi[x], psi[y]))
                throw std::invalid_argument("relation map is not a homomorphism");
        };
        if (g.size() <= 2000) {
            for (std::size_t x = 0; x < g.size(); ++x)
                for (std::size_t y = 0; y < g.size(); ++y) check(x, y);
        } else {
            for (int s = 0; s < 200000; ++s)
                check(rng() % g.size(), rng() % g.size());
        }
    }

    // per-component images and joint surjectivity
    std::vector<std::set<std::vector<i64>>> images(spec.components.size());
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        std::set<std::vector<i64>> gens(phi.component_maps[i].begin(),
                                        phi.component_maps[i].end());
        images[i] = abelian_span(phi.group, gens);
    }
    std::set<std::vector<i64>> joint_gens;
    for (const auto& im : images) joint_gens.insert(im.begin(), im.end());
    auto joint = abelian_span(phi.group, joint_gens);
    if ((i64)joint.size() != phi.group.order())
        throw std::invalid_argument("joint relation map is not surjective");

    // subdirectness of the kernel: psi_i(G_i) inside span of the others
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        std::set<std::vector<i64>> others;
        for (std::size_t j = 0; j < spec.components.size(); ++j)
            if (j != i) others.insert(images[j].begin(), images[j].end());
        auto span = abelian_span(phi.group, others);
        for (const auto& v : images[i])
            if (!span.count(v))
                throw std::invalid_argument("kernel is not subdirect");
    }

    phi.canonical_divisors = canonicalize_divisors(phi.group.divisors);
    Int prod = 1;
    for (const auto& c : spec.components) prod *= (Int)c.group.size();
    if (prod % phi.group.order() != 0)
        throw std::logic_error("order bookkeeping failure");
    phi.kernel_order = prod / phi.group.order();
    return phi;
}

std::vector<CyclotomicNumber> lift_character(const PhiGroup& phi,
                                             const Character& chi,
                                             std::size_t component) {
    const auto& psi = phi.component_maps.at(component);
    std::vector<CyclotomicNumber> out;
    out.reserve(psi.size());
    for (const auto& v : psi) out.push_back(chi.value(v));
    return out;
}

FractionResult member_fraction(const EntanglementSpec& spec,
                               const std::vector<LocalSet>& local_sets) {
    FractionResult res;
    res.correction = 1;
    Rational density = 1;
    // histogram of psi vectors over each local set
    PhiGroup phi = build_phi(spec);
    std::vector<std::map<std::vector<i64>, Int>> hist(spec.components.size());
    for (const auto& s : local_sets) {
        if (s.elements.empty()) {
            res.value = 0;
            res.vanishing = true;
            res.obstruction_component = s.component;
            return res;
        }
        for (u32 idx : s.elements)
            hist[s.component][phi.component_maps[s.component][idx]] += 1;
        density *= Rational(Int(s.elements.size()),
                            Int(spec.components[s.component].group.size()));
    }
    CyclotomicNumber corr(Rational(1));
    for (const auto& chi : characters(phi.group)) {
        if (chi.is_trivial()) continue;
        CyclotomicNumber term(Rational(1));
        for (std::size_t i = 0; i < spec.components.size(); ++i) {
            std::vector<std::pair<std::vector<i64>, Int>> ms(hist[i].begin(),
                                                             hist[i].end());
            term = term * char_sum_average(chi, ms);
            if (term.is_zero()) break;
        }
        corr = corr + term;
    }
    if (!corr.is_rational())
        throw std::logic_error("correction factor is not rational");
    res.correction = corr.to_rational();
    res.value = res.correction * density;
    res.vanishing = (res.value == 0);
    return res;
}

Rational brute_force_fraction(const EntanglementSpec& spec,
                              const std::vector<LocalSet>& local_sets,
                              std::size_t cap) {
    std::size_t total = 1;
    for (const auto& c : spec.components) {
        if (total > cap / c.group.size())
            throw std::runtime_error("brute force cap exceeded");
        total *= c.group.size();
    }
    PhiGroup phi = build_phi(spec);
    std::size_t k = spec.components.size();
    std::vector<std::vector<bool>> in_s(k);
    for (std::size_t i = 0; i < k; ++i)
        in_s[i].assign(spec.components[i].group.size(), false);
    for (const auto& s : local_sets)
        for (u32 idx : s.elements) in_s[s.component][idx] = true;

    Int kernel = 0, matched = 0;
    std::vector<u32> cur(k, 0);
    for (;;) {
        std::vector<i64> acc = phi.group.zero();
        bool all_s = true;
        for (std::size_t i = 0; i < k; ++i) {
            acc = phi.group.add(acc, phi.component_maps[i][cur[i]]);
            all_s = all_s && in_s[i][cur[i]];
        }
        if (acc == phi.group.zero()) {
            kernel += 1;
            if (all_s) matched += 1;
        }
        std::size_t i = k;
        bool done = false;
        while (i > 0) {
            --i;
            if (++cur[i] < spec.components[i].group.size()) break;
            cur[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    if (kernel == 0) throw std::logic_error("empty kernel");
    return Rational(matched, kernel);
}

bool phi_stability_check(const EntanglementSpec& spec, i64 extra_prime) {
    for (const auto& c : spec.components)
        if (c.prime == extra_prime)
            throw std::invalid_argument("extra level not coprime");
    PhiGroup before = build_phi(spec);
    EntanglementSpec augmented = spec;
    EntanglementComponent extra;
    extra.prime = extra_prime;
    extra.exponent = 1;
    extra.group = full_gl2((u64)extra_prime);
    augmented.components.push_back(extra);
    PhiGroup after = build_phi(augmented);
    return before.canonical_divisors == after.canonical_divisors;
}

ProductSubgroup materialize_kernel(const EntanglementSpec& spec, std::size_t cap) {
    PhiGroup phi = build_phi(spec);
    std::size_t total = 1;
    for (const auto& c : spec.components) {
        if (total > cap / c.group.size())
            throw std::runtime_error("materialize cap exceeded");
        total *= c.group.size();
    }
    std::vector<MatrixGroup> factors;
    for (const auto& c : spec.components) factors.push_back(c.group);
    std::vector<std::vector<u32>> tuples;
    std::size_t k = factors.size();
    std::vector<u32> cur(k, 0);
    for (;;) {
        std::vector<i64> acc = phi.group.zero();
        for (std::size_t i = 0; i < k; ++i)
            acc = phi.group.add(acc, phi.component_maps[i][cur[i]]);
        if (acc == phi.group.zero()) tuples.push_back(cur);
        std::size_t i = k;
        bool done = false;
        while (i > 0) {
            --i;
            if (++cur[i] < factors[i].size()) break;
            cur[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return ProductSubgroup(std::move(factors), std::move(tuples));
}

// ---------- rule evaluation and JSON ----------

int signature_mod2(const Mat& m) {
    Mat a = m.reduced(2);
    // permutation of the nonzero vectors (1,0), (0,1), (1,1) of F_2^2
    auto apply = [&](int x, int y) {
        return std::pair<int, int>{(int)((a.a * (u64)x + a.b * (u64)y) % 2),
                                   (int)((a.c * (u64)x + a.d * (u64)y) % 2)};
    };
    int idx[3];
    const std::pair<int, int> vecs[3] = {{1, 0}, {0, 1}, {1, 1}};
    for (int i = 0; i < 3; ++i) {
        auto im = apply(vecs[i].first, vecs[i].second);
        for (int j = 0; j < 3; ++j)
            if (im == vecs[j]) idx[i] = j;
    }
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (idx[i] > idx[j]) ++inversions;
    return inversions % 2;  // 0 even (eps=+1), 1 odd (eps=-1)
}

namespace {

using nlohmann::json;

std::vector<std::vector<i64>> eval_rule(const json& m, const MatrixGroup& g,
                                        const std::vector<i64>& divisors) {
    std::string rule = m.value("rule", "table");
    std::vector<std::vector<i64>> table(g.size(),
                                        std::vector<i64>(divisors.size(), 0));
    i64 coeff = m.value("coeff", (i64)1);
    if (rule == "table") {
        const auto& t = m.at("table");
        if (t.size() != g.size()) throw std::invalid_argument("table size mismatch");
        for (std::size_t j = 0; j < g.size(); ++j)
            for (std::size_t k = 0; k < divisors.size(); ++k) {
                i64 v = t[j][k].get<i64>() * coeff % divisors[k];
                table[j][k] = (v + divisors[k]) % divisors[k];
            }
        return table;
    }
    if (divisors.size() != 1)
        throw std::invalid_argument("named rules need a single-divisor target");
    i64 d = divisors[0];
    for (std::size_t j = 0; j < g.size(); ++j) {
        Mat a = g.element(j);
        i64 v = 0;
        if (rule == "signature_mod2") {
            if (d % 2 != 0) throw std::invalid_argument("target order must be even");
            v = signature_mod2(a) * (d / 2);
        } else if (rule == "det_legendre") {
            if (d % 2 != 0) throw std::invalid_argument("target order must be even");
            i64 q = m.value("modulus", (i64)g.level());
            if ((i64)g.level() % q != 0)
                throw std::invalid_argument("modulus does not divide level");
            int s = kronecker(Int((i64)(a.det() % (u64)q)), Int(q));
            if (s == 0) throw std::invalid_argument("determinant not coprime to modulus");
            v = (s == 1 ? 0 : d / 2);
        } else if (rule == "det_mod_target") {
            i64 q = m.at("modulus").get<i64>();
            i64 gen = m.at("generator").get<i64>();
            bool pm = m.value("plus_minus", false);
            if ((i64)g.level() % q != 0)
                throw std::invalid_argument("modulus does not divide level");
            i64 det = (i64)(a.det() % (u64)q);
            i64 x = 1;
            i64 k = 0;
            i64 phi_q = euler_phi(q);
            for (; k < phi_q; ++k) {
                if (x == det || (pm && (q - x) % q == det)) break;
                x = x * gen % q;
            }
            if (k == phi_q) throw std::invalid_argument("dlog failed");
            v = k % d;
        } else {
            throw std::invalid_argument("unknown rule: " + rule);
        }
        v = v * coeff % d;
        table[j][0] = (v + d) % d;
    }
    return table;
}

}  // namespace

EntanglementSpec spec_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    EntanglementSpec spec;
    for (const auto& c : j.at("components")) {
        EntanglementComponent comp;
        comp.prime = c.at("prime").get<i64>();
        comp.exponent = c.value("exponent", 1);
        u64 level = (u64)comp.level();
        if (c.contains("generators") && !c.at("generators").empty()) {
            std::vector<Mat> gens;
            for (const auto& g : c.at("generators"))
                gens.push_back(Mat{level, g[0].get<u64>() % level, g[1].get<u64>() % level,
                                   g[2].get<u64>() % level, g[3].get<u64>() % level});
            comp.group = group_close(gens, level);
        } else {
            comp.group = full_gl2(level);
        }
        spec.components.push_back(std::move(comp));
    }
    for (const auto& r : j.value("relations", json::array())) {
        EntanglementRelation rel;
        for (const auto& d : r.at("target_divisors")) rel.target_divisors.push_back(d.get<i64>());
        rel.maps.assign(spec.components.size(), {});
        for (const auto& m : r.at("maps")) {
            std::size_t ci = m.at("component").get<std::size_t>();
            rel.maps.at(ci) =
                eval_rule(m, spec.components[ci].group, rel.target_divisors);
        }
        spec.relations.push_back(std::move(rel));
    }
    return spec;
}

std::string spec_to_json(const EntanglementSpec& spec) {
    json j;
    j["components"] = json::array();
    for (const auto& c : spec.components) {
        json jc;
        jc["prime"] = c.prime;
        jc["exponent"] = c.exponent;
        jc["generators"] = json::array();
        for (const auto& g : c.group.generators())
            jc["generators"].push_back({g.a, g.b, g.c, g.d});
        j["components"].push_back(jc);
    }
    j["relations"] = json::array();
    for (const auto& r : spec.relations) {
        json jr;
        jr["target_divisors"] = r.target_divisors;
        jr["maps"] = json::array();
        for (std::size_t i = 0; i < r.maps.size(); ++i) {
            if (r.maps[i].empty()) continue;
            json jm;
            jm["component"] = i;
            jm["rule"] = "table";
            jm["table"] = r.maps[i];
            jr["maps"].push_back(jm);
        }
        j["relations"].push_back(jr);
    }
    return j.dump(2);
}

}  // namespace ell
