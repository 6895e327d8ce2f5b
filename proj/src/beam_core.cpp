#include "fdbeam/beam_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdbeam/errors.hpp"

namespace fdbeam {

namespace {

double inv_or_zero(double k) {
    if (std::isinf(k)) return 0.0;
    if (!(k > 0.0)) throw InputError("stiffness must be positive (or infinite), got " + std::to_string(k));
    return 1.0 / k;
}

void check_compliance(const SectionCompliances& c) {
    auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!ok(c.c_axial) || !ok(c.c_shear) || !ok(c.c_bend))
        throw InputError("compliances must be finite and non-negative");
}

}  // namespace

SectionCompliances SectionCompliances::from_stiffness(double ea, double gas, double ei) {
    return {inv_or_zero(ea), inv_or_zero(gas), inv_or_zero(ei)};
}

void BeamElement::validate() const {
    if (!(length > 0.0) || !std::isfinite(length)) throw InputError("beam length must be positive");
    if (segments < 1) throw InputError("beam needs at least one segment");
    if (!std::isfinite(inclination)) throw InputError("inclination must be finite");
    if (offset_left < 0.0 || offset_right < 0.0) throw InputError("rigid offsets must be non-negative");
    if (!(offset_left + offset_right < length)) throw InputError("rigid offsets exceed beam length");
    if (compliances.size() != 1 && compliances.size() != static_cast<size_t>(segments))
        throw InputError("compliance list must have 1 or N entries");
    for (const auto& c : compliances) check_compliance(c);
}

SectionCompliances compliances_at(const BeamElement& beam, int segment_index) {
    if (segment_index < 1 || segment_index > beam.segments)
        throw InputError("segment index " + std::to_string(segment_index) + " out of range");
    if (beam.compliances.empty()) throw InputError("beam has no compliances");
    if (beam.compliances.size() == 1) return beam.compliances.front();
    return beam.compliances.at(segment_index - 1);
}

LoadDensity LoadDensity::constant(double v) {
    LoadDensity d;
    if (!std::isfinite(v)) throw InputError("load density must be finite");
    d.kind_ = v == 0.0 ? Kind::zero : Kind::constant;
    d.value_ = v;
    return d;
}

LoadDensity LoadDensity::function(std::function<double(double)> f) {
    if (!f) throw InputError("empty load callable");
    LoadDensity d;
    d.kind_ = Kind::function;
    d.fn_ = std::move(f);
    return d;
}

LoadDensity LoadDensity::table(std::vector<std::pair<double, double>> pts) {
    if (pts.empty()) throw InputError("empty load table");
    for (size_t i = 1; i < pts.size(); ++i)
        if (!(pts[i].first >= pts[i - 1].first)) throw InputError("load table stations must be ascending");
    LoadDensity d;
    d.kind_ = Kind::table;
    d.table_ = std::move(pts);
    return d;
}

double LoadDensity::operator()(double xi) const {
    switch (kind_) {
        case Kind::zero: return 0.0;
        case Kind::constant: return value_;
        case Kind::function: {
            double v = fn_(xi);
            if (!std::isfinite(v)) throw InputError("load callable not finite at xi = " + std::to_string(xi));
            return v;
        }
        case Kind::table: {
            if (xi <= table_.front().first) return table_.front().second;
            if (xi >= table_.back().first) return table_.back().second;
            auto it = std::upper_bound(table_.begin(), table_.end(), xi,
                                       [](double v, const auto& p) { return v < p.first; });
            const auto& [x1, y1] = *it;
            const auto& [x0, y0] = *(it - 1);
            if (x1 == x0) return y1;
            return y0 + (y1 - y0) * (xi - x0) / (x1 - x0);
        }
    }
    return 0.0;
}

bool LoadDensity::is_zero() const {
    if (kind_ == Kind::zero) return true;
    if (kind_ == Kind::table)
        return std::all_of(table_.begin(), table_.end(), [](const auto& p) { return p.second == 0.0; });
    return false;
}

bool LoadDensity::operator==(const LoadDensity& o) const {
    if (is_zero() && o.is_zero()) return true;
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::constant) return value_ == o.value_;
    if (kind_ == Kind::table) return table_ == o.table_;
    return false;  // callables are not comparable
}

OffsetStation PartialResultants::left_offset() const {
    auto s = data_->left;
    return {scale_ * s.px, scale_ * s.pz, scale_ * s.m};
}

OffsetStation PartialResultants::right_offset() const {
    auto s = data_->right;
    return {scale_ * s.px, scale_ * s.pz, scale_ * s.m};
}

PartialResultants precompute_partial_resultants(const DistributedLoad& load, const BeamElement& beam) {
    beam.validate();
    auto d = std::make_shared<PartialResultants::Data>();
    const int n = beam.segments;
    d->px_half.assign(n, 0.0);
    d->pz_half.assign(n, 0.0);
    d->m_half.assign(n, 0.0);
    if (load.empty()) return PartialResultants(d, load.scale);
    d->loaded = true;

    const double L = beam.length;
    const double a = beam.offset_left;
    const double h = beam.dxi();
    const double b = a + beam.flexible_length();

    auto px = [&](double xi) { return load.px(xi); };
    auto pz = [&](double xi) { return load.pz(xi); };

    // left offset: trapezoid to its midpoint and to its end
    double Px = 0.0, Pz = 0.0;
    if (a > 0.0) {
        const double mid = 0.5 * a;
        d->left.px = (px(0.0) + px(mid)) * mid / 2.0;
        d->left.pz = (pz(0.0) + pz(mid)) * mid / 2.0;
        d->left.m = load.m(mid);
        Px = (px(0.0) + px(a)) * a / 2.0;
        Pz = (pz(0.0) + pz(a)) * a / 2.0;
    }

    std::vector<double> pxm(n), pzm(n);
    for (int i = 1; i <= n; ++i) {
        const double xi = beam.mid_xi(i);
        pxm[i - 1] = px(xi);
        pzm[i - 1] = pz(xi);
        d->m_half[i - 1] = load.m(xi);
    }
    d->px_half[0] = Px + (px(a) + pxm[0]) * h / 4.0;
    d->pz_half[0] = Pz + (pz(a) + pzm[0]) * h / 4.0;
    for (int i = 1; i < n; ++i) {
        d->px_half[i] = d->px_half[i - 1] + (pxm[i - 1] + pxm[i]) * h / 2.0;
        d->pz_half[i] = d->pz_half[i - 1] + (pzm[i - 1] + pzm[i]) * h / 2.0;
    }
    d->px_flex_end = d->px_half[n - 1] + (px(b) + pxm[n - 1]) * h / 4.0;
    d->pz_flex_end = d->pz_half[n - 1] + (pz(b) + pzm[n - 1]) * h / 4.0;

    d->px_end = d->px_flex_end;
    d->pz_end = d->pz_flex_end;
    const double r = beam.offset_right;
    if (r > 0.0) {
        const double mid = b + 0.5 * r;
        d->right.px = d->px_flex_end + (px(b) + px(mid)) * r / 4.0;
        d->right.pz = d->pz_flex_end + (pz(b) + pz(mid)) * r / 4.0;
        d->right.m = load.m(mid);
        d->px_end = d->px_flex_end + (px(b) + px(L)) * r / 2.0;
        d->pz_end = d->pz_flex_end + (pz(b) + pz(L)) * r / 2.0;
    }

    // concentrated member forces: every station past the application point
    for (const auto& f : load.point_forces) {
        if (f.position < 0.0 || f.position > L) throw InputError("member point force outside the beam");
        if (a > 0.0 && 0.5 * a > f.position) {
            d->left.px += f.fx;
            d->left.pz += f.fz;
        }
        for (int i = 1; i <= n; ++i) {
            if (beam.mid_xi(i) > f.position) {
                d->px_half[i - 1] += f.fx;
                d->pz_half[i - 1] += f.fz;
            }
        }
        if (b > f.position) {
            d->px_flex_end += f.fx;
            d->pz_flex_end += f.fz;
        }
        if (r > 0.0 && b + 0.5 * r > f.position) {
            d->right.px += f.fx;
            d->right.pz += f.fz;
        }
        d->px_end += f.fx;
        d->pz_end += f.fz;
    }
    return PartialResultants(d, load.scale);
}

}  // namespace fdbeam
