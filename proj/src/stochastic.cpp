#include "rentdiv/stochastic.hpp"

#include "rentdiv/matching.hpp"
#include "rentdiv/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rentdiv::stochastic {

namespace {

const Money& two_pow_32() {
    static const Money v(mpz_class(1) << 32);
    return v;
}

Money dyadic64(std::uint64_t k) {
    mpz_class num;
    mpz_import(num.get_mpz_t(), 1, 1, sizeof(k), 0, 0, &k);
    Money out(num, mpz_class(1) << 64);
    out.canonicalize();
    return out;
}

using ApartmentDraw = std::vector<std::vector<Money>>;  // [player][room]

ApartmentDraw draw_apartment(SplitMix64& rng, std::size_t n, const DistributionSpec& spec) {
    ApartmentDraw out(n, std::vector<Money>(n));
    for (std::size_t k = 0; k < n; ++k) {
        if (spec.kind == DistributionSpec::Kind::CorrelatedBernoulli) {
            const bool first = rng.next() >> 63;
            const bool same = rng.bernoulli(spec.r);
            out[0][k] = first ? 1 : 0;
            out[1][k] = (same ? first : !first) ? 1 : 0;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (spec.kind == DistributionSpec::Kind::Uniform01) {
                out[i][k] = rng.uniform01();
                continue;
            }
            const Money u = dyadic64(rng.next());
            Money cumulative = 0;
            std::size_t pick = spec.values.size() - 1;
            for (std::size_t t = 0; t < spec.values.size(); ++t) {
                cumulative += spec.probabilities[t];
                if (u < cumulative) {
                    pick = t;
                    break;
                }
            }
            out[i][k] = spec.values[pick];
        }
    }
    return out;
}

void check_sampling_args(std::size_t n, std::size_t m, const DistributionSpec& spec) {
    spec.validate();
    if (n == 0 || m == 0) throw std::invalid_argument("need at least one player and one apartment");
    if (spec.kind == DistributionSpec::Kind::CorrelatedBernoulli && n != 2)
        throw std::invalid_argument("correlated-bernoulli is defined for two players only");
}

Instance build(const std::vector<ApartmentDraw>& apartments, std::size_t n, const Money& rent) {
    ValueTensor v(n);
    for (const auto& apt : apartments)
        for (std::size_t i = 0; i < n; ++i) v[i].push_back(apt[i]);
    return Instance(std::move(v), std::vector<Money>(apartments.size(), rent));
}

// Kuhn's augmenting paths on a boolean player x room graph.
bool has_perfect_matching(const std::vector<std::vector<bool>>& edge) {
    const std::size_t n = edge.size();
    std::vector<int> room_owner(n, -1);
    std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i, std::vector<bool>& seen) {
        for (std::size_t k = 0; k < n; ++k) {
            if (!edge[i][k] || seen[k]) continue;
            seen[k] = true;
            if (room_owner[k] < 0 || augment(static_cast<std::size_t>(room_owner[k]), seen)) {
                room_owner[k] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> seen(n, false);
        if (!augment(i, seen)) return false;
    }
    return true;
}

Money max_welfare(const Instance& inst, std::size_t j) {
    const auto match = max_weight_assignment(inst, j);
    Money total = -inst.rent(j);
    for (std::size_t i = 0; i < inst.players(); ++i) total += inst.value(i, j, match[i]);
    return total;
}

std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<Money> parse_list(const std::string& text) {
    std::vector<Money> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_money(item));
    return out;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) { return mix64(master ^ mix64(trial + 1)); }

std::uint64_t SplitMix64::next() {
    const std::uint64_t out = mix64(state_);
    state_ += 0x9E3779B97F4A7C15ULL;
    return out;
}

Money SplitMix64::uniform01() {
    Money out(static_cast<unsigned long>(next() >> 32));
    out /= two_pow_32();
    out.canonicalize();
    return out;
}

bool SplitMix64::bernoulli(const Money& p) { return dyadic64(next()) < p; }

DistributionSpec DistributionSpec::discrete(std::vector<Money> values, std::vector<Money> probabilities) {
    DistributionSpec s;
    s.kind = Kind::Discrete;
    s.values = std::move(values);
    s.probabilities = std::move(probabilities);
    for (auto& x : s.values) x.canonicalize();
    for (auto& x : s.probabilities) x.canonicalize();
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::uniform01() { return DistributionSpec{}; }

DistributionSpec DistributionSpec::correlated_bernoulli(Money r) {
    DistributionSpec s;
    s.kind = Kind::CorrelatedBernoulli;
    r.canonicalize();
    s.r = r;
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::parse(const std::string& text) {
    if (text == "uniform01") return uniform01();
    if (text.rfind("corr:", 0) == 0) return correlated_bernoulli(parse_money(text.substr(5)));
    if (text.rfind("discrete:", 0) == 0) {
        const std::string body = text.substr(9);
        const auto at = body.find('@');
        if (at == std::string::npos) throw std::invalid_argument("discrete spec needs values@probabilities");
        return discrete(parse_list(body.substr(0, at)), parse_list(body.substr(at + 1)));
    }
    throw std::invalid_argument("unknown distribution spec '" + text + "'");
}

std::string DistributionSpec::describe() const {
    switch (kind) {
        case Kind::Uniform01:
            return "uniform01";
        case Kind::CorrelatedBernoulli:
            return "corr:" + format_money(r);
        case Kind::Discrete: {
            std::string out = "discrete:";
            for (std::size_t t = 0; t < values.size(); ++t) out += (t ? "," : "") + format_money(values[t]);
            out += "@";
            for (std::size_t t = 0; t < probabilities.size(); ++t)
                out += (t ? "," : "") + format_money(probabilities[t]);
            return out;
        }
    }
    return {};
}

void DistributionSpec::validate() const {
    if (kind == Kind::CorrelatedBernoulli && (r < 0 || r > 1))
        throw std::invalid_argument("correlation r must lie in [0, 1]");
    if (kind == Kind::Discrete) {
        if (values.empty() || values.size() != probabilities.size())
            throw std::invalid_argument("discrete spec needs one probability per value");
        Money total = 0;
        for (const auto& p : probabilities) {
            if (p < 0) throw std::invalid_argument("negative probability");
            total += p;
        }
        if (total != 1) throw std::invalid_argument("probabilities sum to " + format_money(total) + ", not 1");
    }
}

Instance sample_instance(std::size_t n, std::size_t m, const DistributionSpec& spec, const Money& rent,
                         std::uint64_t seed) {
    check_sampling_args(n, m, spec);
    SplitMix64 rng(seed);
    std::vector<ApartmentDraw> apartments;
    for (std::size_t j = 0; j < m; ++j) apartments.push_back(draw_apartment(rng, n, spec));
    return build(apartments, n, rent);
}

TrialReport make_report(std::uint64_t trials, std::uint64_t successes, std::uint64_t seed) {
    if (successes > trials) throw std::invalid_argument("more successes than trials");
    TrialReport r;
    r.trials = trials;
    r.successes = successes;
    r.seed = seed;
    if (trials == 0) return r;
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nn;
    const double denom = 1 + z * z / nn;
    const double center = (p + z * z / (2 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn));
    r.estimate = p;
    r.ci_low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    r.ci_high = successes == trials ? 1.0 : std::min(1.0, center + half);
    return r;
}

TrialReport run_trials(std::uint64_t trials, std::uint64_t seed, const std::function<bool(std::uint64_t)>& predicate,
                       unsigned threads) {
    if (trials == 0) throw std::invalid_argument("trials must be at least 1");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

    std::vector<char> outcome(trials, 0);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t t = next.fetch_add(1);
            if (t >= trials) return;
            try {
                outcome[t] = predicate(trial_seed(seed, t)) ? 1 : 0;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = trials;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    const auto successes = static_cast<std::uint64_t>(std::count(outcome.begin(), outcome.end(), 1));
    return make_report(trials, successes, seed);
}

TrialReport estimate_uef_prob(std::size_t n, std::size_t m, const DistributionSpec& spec, const Money& rent,
                              std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    check_sampling_args(n, m, spec);
    return run_trials(
        trials, seed,
        [&](std::uint64_t s) { return solve_uef(sample_instance(n, m, spec, rent, s)).has_value(); }, threads);
}

TrialReport estimate_event_f_prob(std::size_t n, std::size_t m, const DistributionSpec& spec, const Money& rent,
                                  std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    check_sampling_args(n, m, spec);
    return run_trials(
        trials, seed, [&](std::uint64_t s) { return check_event_f(sample_instance(n, m, spec, rent, s)); },
        threads);
}

Money muw(const Instance& inst, std::size_t apartment) {
    Money total = -inst.rent(apartment);
    for (std::size_t k = 0; k < inst.players(); ++k) {
        Money best = inst.value(0, apartment, k);
        for (std::size_t i = 1; i < inst.players(); ++i) best = std::max(best, inst.value(i, apartment, k));
        total += best;
    }
    return total;
}

std::size_t muw_argmax(const Instance& inst) {
    std::size_t best = 0;
    Money best_value = muw(inst, 0);
    for (std::size_t j = 1; j < inst.apartments(); ++j) {
        Money v = muw(inst, j);
        if (v > best_value) {
            best = j;
            best_value = std::move(v);
        }
    }
    return best;
}

bool check_event_f(const Instance& inst) {
    const std::size_t n = inst.players(), j = muw_argmax(inst);
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    for (std::size_t k = 0; k < n; ++k) {
        Money best = inst.value(0, j, k);
        for (std::size_t i = 1; i < n; ++i) best = std::max(best, inst.value(i, j, k));
        for (std::size_t i = 0; i < n; ++i) edge[i][k] = inst.value(i, j, k) == best;
    }
    return has_perfect_matching(edge);
}

bool check_event_e(const Instance& inst) {
    const std::size_t n = inst.players(), m = inst.apartments();
    if (n < 2 || m < n + 1) return false;
    std::vector<Money> muws(m);
    for (std::size_t j = 0; j < m; ++j) muws[j] = muw(inst, j);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return muws[a] > muws[b]; });
    for (std::size_t t = 0; t + 1 < m; ++t)
        if (!(muws[order[t]] > muws[order[t + 1]])) return false;

    const std::size_t special = order[n];
    const Money special_welfare = max_welfare(inst, special);
    for (std::size_t j = 0; j < m; ++j)
        if (j != special && !(special_welfare > max_welfare(inst, j))) return false;

    // Players are unlabeled: each of the top n apartments needs its own
    // player who weakly tops every room there.
    std::vector<std::vector<bool>> owns(n, std::vector<bool>(n, false));
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t p = 0; p < n; ++p) {
            bool tops = true;
            for (std::size_t k = 0; k < n && tops; ++k)
                for (std::size_t i = 0; i < n && tops; ++i) tops = inst.value(p, order[t], k) >= inst.value(i, order[t], k);
            owns[t][p] = tops;
        }
    return has_perfect_matching(owns);
}

StoppingResult sequential_stopping(std::size_t n, const DistributionSpec& spec, const Money& rent, std::size_t m0,
                                   std::size_t max_m, std::uint64_t seed) {
    if (m0 < 1) throw std::invalid_argument("m0 must be at least 1");
    if (max_m < m0) throw std::invalid_argument("cap below m0");
    check_sampling_args(n, m0, spec);
    SplitMix64 rng(seed);
    std::vector<ApartmentDraw> apartments;
    StoppingResult result;
    while (apartments.size() < m0) apartments.push_back(draw_apartment(rng, n, spec));
    for (;;) {
        result.apartments_drawn = apartments.size();
        if (solve_uef(build(apartments, n, rent))) {
            result.stopped_at = apartments.size();
            return result;
        }
        if (apartments.size() == max_m) return result;
        apartments.push_back(draw_apartment(rng, n, spec));
    }
}

Money closed_form_uef_prob(std::size_t m, const Money& r) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (r < 0 || r > 1) throw std::invalid_argument("r must lie in [0, 1]");
    auto power = [m](const Money& base) {
        Money out = 1;
        for (std::size_t t = 0; t < m; ++t) out *= base;
        return out;
    };
    const Money quarter(1, 4);
    const Money no_solution = power((r * r + 2) * quarter) - 2 * power(quarter) - power((4 * r - r * r) * quarter) +
                              2 * power((2 * r - r * r) * quarter);
    Money out = 1 - no_solution;
    out.canonicalize();
    return out;
}

bool three_events_test(const Instance& inst) {
    if (inst.players() != 2) throw std::invalid_argument("three-events test needs exactly two players");
    const std::size_t m = inst.apartments();
    for (std::size_t j = 0; j < m; ++j) {
        if (inst.rent(j) != 1) throw std::invalid_argument("three-events test needs unit rents");
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t k = 0; k < 2; ++k)
                if (inst.value(i, j, k) != 0 && inst.value(i, j, k) != 1)
                    throw std::invalid_argument("three-events test needs binary values");
    }
    auto v = [&](std::size_t i, std::size_t j, std::size_t k) { return inst.value(i, j, k) == 1; };
    bool e1 = true, e2_first = false, e2_second = false, e3 = false;
    for (std::size_t j = 0; j < m; ++j) {
        if ((v(0, j, 0) && v(1, j, 1)) || (v(0, j, 1) && v(1, j, 0))) e1 = false;
        e2_first = e2_first || v(0, j, 0) || v(0, j, 1);
        e2_second = e2_second || v(1, j, 0) || v(1, j, 1);
        for (std::size_t a = 0; a < 2; ++a)
            if (v(a, j, 0) && v(a, j, 1) && !v(1 - a, j, 0) && !v(1 - a, j, 1)) e3 = true;
    }
    return e1 && e2_first && e2_second && e3;
}

std::string csv_header() { return "n,m,spec,trials,successes,estimate,ci_low,ci_high,seed"; }

std::string csv_row(std::size_t n, std::size_t m, const DistributionSpec& spec, const TrialReport& report) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed << n << ',' << m << ',' << quoted(spec.describe()) << ',' << report.trials << ','
        << report.successes << ',' << report.estimate << ',' << report.ci_low << ',' << report.ci_high << ','
        << report.seed;
    return out.str();
}

}  // namespace rentdiv::stochastic
