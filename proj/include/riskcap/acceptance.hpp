#pragma once

#include <functional>
#include <optional>

#include "riskcap/core.hpp"
#include "riskcap/quantile.hpp"

namespace riskcap {

enum class AcceptanceKind { VaR, TVaR, Expectation, PositiveCone, CustomCone };

struct ConeFlags {
    bool closed = false;
    bool conic = false;
    bool convex = false;
};

/// Acceptance sets as first-class objects. Built-in kinds (VaR, TVaR,
/// Expectation, PositiveCone) carry exact membership, interior and closure
/// tests. CustomCone wraps a black-box predicate; its interior/closure
/// tests are one-sided epsilon probes.
class AcceptanceSpec {
public:
    using Predicate = std::function<bool(const Position&)>;

    static AcceptanceSpec var(double alpha);
    static AcceptanceSpec tvar(double alpha);
    static AcceptanceSpec expectation(double floor);
    static AcceptanceSpec positive_cone();

    /// Registers a custom monotone set. The predicate is probed for
    /// monotonicity on `probe_samples` random pairs drawn on `space`;
    /// a counterexample raises NonMonotonePredicate.
    static AcceptanceSpec custom_cone(Predicate pred, ConeFlags flags,
                                      const SpacePtr& space,
                                      unsigned seed = 42,
                                      int probe_samples = 256);

    AcceptanceKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double floor() const { return floor_; }

    bool declared_closed() const;
    bool declared_conic() const;
    bool declared_convex() const;

    std::string name() const;

private:
    AcceptanceKind kind_ = AcceptanceKind::PositiveCone;
    double alpha_ = 0.0;  // VaR / TVaR
    double floor_ = 0.0;  // Expectation
    Predicate predicate_;
    ConeFlags flags_;

    friend bool contains(const AcceptanceSpec&, const Position&);
    friend bool in_interior(const AcceptanceSpec&, const Position&);
    friend bool in_closure(const AcceptanceSpec&, const Position&);
};

/// Exact membership for built-ins; delegates for CustomCone.
bool contains(const AcceptanceSpec& a, const Position& x);

/// Exact (strict-inequality) interior test for built-ins. For CustomCone
/// the test probes X - eps*1 over eps in {1, 1e-1, ..., 1e-8}: true
/// implies interior membership, false only means "not detected".
bool in_interior(const AcceptanceSpec& a, const Position& x);

/// Built-ins are closed, so this equals contains. For a CustomCone not
/// declared closed, probes X + eps*1 over the same grid.
bool in_closure(const AcceptanceSpec& a, const Position& x);

}  // namespace riskcap
