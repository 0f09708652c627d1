#include "fhdg/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace fhdg {

Mesh1D::Mesh1D(std::vector<double> nodes)
    : nodes_(std::move(nodes))
{
    if (nodes_.size() < 2)
        throw std::invalid_argument("Mesh1D: needs at least two nodes");
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
        if (!(nodes_[i] < nodes_[i + 1]))
            throw std::invalid_argument("Mesh1D: nodes must be strictly increasing");
}

double Mesh1D::max_element_size() const
{
    double h = 0.0;
    for (int e = 0; e < num_elements(); ++e)
        h = std::max(h, nodes_[e + 1] - nodes_[e]);
    return h;
}

int Mesh1D::locate(double x) const
{
    if (x < a() || x > b())
        throw std::invalid_argument("Mesh1D::locate: point outside the domain");
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    int e = static_cast<int>(it - nodes_.begin()) - 1;
    return std::min(e, num_elements() - 1);
}

Mesh1D build_uniform_mesh(double a, double b, int n)
{
    if (n < 1)
        throw std::invalid_argument("build_uniform_mesh: N must be >= 1");
    if (!(b > a))
        throw std::invalid_argument("build_uniform_mesh: requires b > a");
    std::vector<double> nodes(n + 1);
    for (int i = 0; i <= n; ++i)
        nodes[i] = a + (b - a) * (static_cast<double>(i) / n);
    nodes[0] = a;
    nodes[n] = b;
    return Mesh1D(std::move(nodes));
}

} // namespace fhdg
