#pragma once

#include <vector>

namespace fhdg {

struct Element {
    double left;
    double right;
    double length() const { return right - left; }
    double midpoint() const { return 0.5 * (left + right); }
};

/// Ordered partition of [a, b] into intervals. Immutable after
/// construction, so instances can be shared freely across threads.
class Mesh1D {
public:
    /// Builds a mesh from a strictly increasing node sequence (>= 2 nodes).
    explicit Mesh1D(std::vector<double> nodes);

    int num_elements() const { return static_cast<int>(nodes_.size()) - 1; }
    int num_faces() const { return static_cast<int>(nodes_.size()); }

    double a() const { return nodes_.front(); }
    double b() const { return nodes_.back(); }
    double node(int i) const { return nodes_[i]; }
    const std::vector<double>& nodes() const { return nodes_; }

    Element element(int e) const { return {nodes_[e], nodes_[e + 1]}; }

    /// Maximum element length h.
    double max_element_size() const;

    /// Index of the element containing x (points on an interior face go to
    /// the element on the right, except x = b which stays in the last one).
    int locate(double x) const;

private:
    std::vector<double> nodes_;
};

/// N equal elements covering [a, b]. Throws std::invalid_argument for
/// N = 0 or b <= a.
Mesh1D build_uniform_mesh(double a, double b, int n);

} // namespace fhdg
