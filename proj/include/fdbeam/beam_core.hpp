#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace fdbeam {

// Compliances instead of stiffnesses so rigid / Kirchhoff / Euler need no special code.
struct SectionCompliances {
    double c_axial = 0.0;  // 1/EA
    double c_shear = 0.0;  // 1/GA_s
    double c_bend = 0.0;   // 1/EI

    // infinite stiffness maps to zero compliance
    static SectionCompliances from_stiffness(double ea, double gas, double ei);
    bool rigid() const { return c_axial == 0.0 && c_shear == 0.0 && c_bend == 0.0; }
    bool operator==(const SectionCompliances&) const = default;
};

struct GeneralizedCoordinates {
    double x = 0.0;
    double z = 0.0;
    double phi = 0.0;  // from global z-axis, counterclockwise; phi = Phi - alpha
    bool operator==(const GeneralizedCoordinates&) const = default;
};

struct GeneralizedForces {
    double fx = 0.0;
    double fz = 0.0;
    double m = 0.0;
    bool operator==(const GeneralizedForces&) const = default;
};

struct BeamElement {
    double length = 1.0;
    double inclination = 0.0;  // alpha_ab, clockwise from x
    int segments = 1;
    std::vector<SectionCompliances> compliances;  // one entry (uniform) or one per segment
    double offset_left = 0.0;
    double offset_right = 0.0;

    BeamElement() = default;
    BeamElement(double L, int n, SectionCompliances c, double alpha = 0.0)
        : length(L), inclination(alpha), segments(n), compliances{c} {}

    double flexible_length() const { return length - offset_left - offset_right; }
    double dxi() const { return flexible_length() / segments; }
    // xi coordinate (measured from end a) of grid point i / midpoint i-1/2
    double grid_xi(int i) const { return offset_left + i * dxi(); }
    double mid_xi(int i) const { return offset_left + (i - 0.5) * dxi(); }
    void validate() const;
};

// 1-based segment index
SectionCompliances compliances_at(const BeamElement& beam, int segment_index);

// One component of a load density along xi in [0, L].
class LoadDensity {
public:
    LoadDensity() = default;
    static LoadDensity constant(double v);
    static LoadDensity function(std::function<double(double)> f);
    // piecewise linear through (xi, value) pairs, constant extension outside
    static LoadDensity table(std::vector<std::pair<double, double>> pts);

    double operator()(double xi) const;
    bool is_zero() const;

    enum class Kind { zero, constant, function, table };
    Kind kind() const { return kind_; }
    double constant_value() const { return value_; }
    const std::vector<std::pair<double, double>>& table_points() const { return table_; }
    bool operator==(const LoadDensity& o) const;

private:
    Kind kind_ = Kind::zero;
    double value_ = 0.0;
    std::function<double(double)> fn_;
    std::vector<std::pair<double, double>> table_;
};

struct PointForce {
    double position = 0.0;  // xi
    double fx = 0.0;
    double fz = 0.0;
    bool operator==(const PointForce&) const = default;
};

struct DistributedLoad {
    LoadDensity px, pz, m;
    std::vector<PointForce> point_forces;
    double scale = 1.0;

    bool empty() const { return px.is_zero() && pz.is_zero() && m.is_zero() && point_forces.empty(); }
    bool operator==(const DistributedLoad&) const = default;
};

// load quantities at the midpoint of a rigid offset
struct OffsetStation {
    double px = 0.0, pz = 0.0, m = 0.0;
};

// Reference (unit load factor) partial resultants; scale applied on retrieval.
class PartialResultants {
public:
    struct Data {
        std::vector<double> px_half, pz_half, m_half;  // per midpoint i-1/2, index i-1
        double px_end = 0.0, pz_end = 0.0;             // at xi = L
        double px_flex_end = 0.0, pz_flex_end = 0.0;   // end of the flexible part
        OffsetStation left, right;
        bool loaded = false;
    };

    PartialResultants() : data_(std::make_shared<Data>()) {}
    explicit PartialResultants(std::shared_ptr<const Data> d, double scale = 1.0)
        : data_(std::move(d)), scale_(scale) {}

    // cheap copy with a different load factor
    PartialResultants scaled(double s) const { return PartialResultants(data_, s); }
    double scale() const { return scale_; }
    bool has_load() const { return data_->loaded && scale_ != 0.0; }
    int size() const { return static_cast<int>(data_->px_half.size()); }

    // 1-based midpoint index i (station i-1/2)
    double px_half(int i) const { return scale_ * data_->px_half[i - 1]; }
    double pz_half(int i) const { return scale_ * data_->pz_half[i - 1]; }
    double m_half(int i) const { return scale_ * data_->m_half[i - 1]; }
    double px_end() const { return scale_ * data_->px_end; }
    double pz_end() const { return scale_ * data_->pz_end; }
    OffsetStation left_offset() const;
    OffsetStation right_offset() const;

    const Data& reference() const { return *data_; }

private:
    std::shared_ptr<const Data> data_;
    double scale_ = 1.0;
};

PartialResultants precompute_partial_resultants(const DistributedLoad& load, const BeamElement& beam);

}  // namespace fdbeam
