#include "casipol/wall.hpp"

#include <stdexcept>
#include <utility>

namespace casipol {

Wall Wall::none() {
    Wall w;
    w.impl_ = None{};
    return w;
}

Wall Wall::mirror() {
    Wall w;
    w.impl_ = Mirror{};
    return w;
}

Wall Wall::provider(Provider f) {
    if (!f) throw std::invalid_argument("Wall::provider: empty function");
    Wall w;
    w.impl_ = std::move(f);
    return w;
}

Wall Wall::stack(std::vector<Layer> layers) {
    if (layers.empty()) throw std::invalid_argument("Wall::stack: no layers");
    if (!layers.front().semi_infinite())
        throw std::invalid_argument("Wall::stack: first (deepest) layer must be semi-infinite");
    for (std::size_t j = 1; j < layers.size(); ++j)
        if (layers[j].semi_infinite())
            throw std::invalid_argument("Wall::stack: coating layers must be finite");
    Wall w;
    w.impl_ = std::move(layers);
    return w;
}

BoundWall Wall::bind(const MaterialModel& ambient) const {
    BoundWall b;
    if (std::holds_alternative<None>(impl_)) {
        b.impl_ = BoundWall::None{};
    } else if (std::holds_alternative<Mirror>(impl_)) {
        b.impl_ = BoundWall::Mirror{};
    } else if (const auto* f = std::get_if<Provider>(&impl_)) {
        b.impl_ = *f;
    } else {
        const auto& wall_layers = std::get<std::vector<Layer>>(impl_);
        std::vector<Layer> all = wall_layers;
        all.push_back(Layer{ambient, kSemiInfinite});
        b.impl_ = LayerStack(std::move(all));
    }
    return b;
}

double BoundWall::operator()(Pol pol, SpectralPoint p) const {
    if (std::holds_alternative<None>(impl_)) return 0.0;
    if (std::holds_alternative<Mirror>(impl_)) return pol == Pol::p ? 1.0 : -1.0;
    if (const auto* f = std::get_if<Wall::Provider>(&impl_)) return (*f)(pol, p);
    const auto& s = std::get<LayerStack>(impl_);
    return reflect_stack(s, s.size() - 1, Side::left, pol, p);
}

}  // namespace casipol
