#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "oneill/field_elem.hpp"

namespace oneill {

/// Tuning knobs shared by every check runner.
struct CheckConfig {
    int samples = 7;          // sample points per check
    int field_pairs = 10;     // random field draws per identity
    int classify_samples = 25;
    uint64_t seed = 42;
    bool exact = true;        // exact mode: residuals must vanish literally
    double tol_first = 1e-9;  // float mode, first-derivative level
    double tol_second = 1e-6; // float mode, curvature-bearing level
    double angle_eps = 1e-6;  // radians, slant classification spread
};

enum class Verdict { pass, fail, inapplicable };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inapplicable";
    }
}

/// Outcome of one named check: residual samples against a tolerance plus
/// free-form evidence notes.
struct CheckReport {
    std::string name;
    std::string anchor;  // short tag of the identity or statement checked
    Verdict verdict = Verdict::pass;
    double tolerance = 0.0;
    bool exact = true;
    std::vector<double> residuals;
    std::vector<std::string> notes;

    double max_residual() const {
        double m = 0;
        for (double r : residuals) m = std::max(m, r);
        return m;
    }

    static CheckReport not_applicable(std::string name, std::string anchor, std::string why) {
        CheckReport r;
        r.name = std::move(name);
        r.anchor = std::move(anchor);
        r.verdict = Verdict::inapplicable;
        r.notes.push_back(std::move(why));
        return r;
    }
};

/// Accumulates absolute residuals and settles the verdict against a
/// tolerance (zero in exact mode).
class ResidualCollector {
public:
    ResidualCollector(std::string name, std::string anchor, double tolerance, bool exact)
        : name_(std::move(name)), anchor_(std::move(anchor)), tol_(tolerance), exact_(exact) {}

    void add(double r) { rs_.push_back(std::fabs(r)); }
    void add(const FieldElem& r) { rs_.push_back(r.is_zero() ? 0.0 : r.abs_double()); }
    void add(const std::vector<FieldElem>& v) {
        double m = 0;
        for (const auto& c : v)
            if (!c.is_zero()) m = std::max(m, c.abs_double());
        rs_.push_back(m);
    }
    void add_abs_max(const std::vector<double>& v) {
        double m = 0;
        for (double c : v) m = std::max(m, std::fabs(c));
        rs_.push_back(m);
    }
    void note(std::string n) { notes_.push_back(std::move(n)); }
    void force_fail(std::string why) {
        forced_fail_ = true;
        notes_.push_back(std::move(why));
    }

    bool currently_clean() const {
        if (forced_fail_) return false;
        for (double r : rs_)
            if (r > tol_) return false;
        return true;
    }

    CheckReport finish() const {
        CheckReport r;
        r.name = name_;
        r.anchor = anchor_;
        r.tolerance = tol_;
        r.exact = exact_;
        r.residuals = rs_;
        r.notes = notes_;
        r.verdict = currently_clean() ? Verdict::pass : Verdict::fail;
        return r;
    }

private:
    std::string name_, anchor_;
    double tol_;
    bool exact_;
    bool forced_fail_ = false;
    std::vector<double> rs_;
    std::vector<std::string> notes_;
};

/// Decimal rendering used in reports; exact zeros print as "0".
inline std::string residual_str(double r) {
    if (r == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", r);
    return buf;
}

}  // namespace oneill
