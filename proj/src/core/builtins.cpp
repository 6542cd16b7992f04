#include <cmath>

#include "core/dn.hpp"
#include "core/kernel.hpp"

namespace sc {

namespace {

Domain domain_from_json(const nlohmann::json& j) {
  std::string kind = j.value("kind", "interval");
  if (kind == "interval") return IntervalDomain{j.value("a", 0.0), j.value("b", 1.0)};
  if (kind == "box") {
    BoxSamplingDomain bx;
    bx.lo = j.at("lo").get<std::vector<double>>();
    bx.hi = j.at("hi").get<std::vector<double>>();
    if (bx.lo.size() != bx.hi.size() || bx.lo.empty())
      fail(errc::usage, "domain: 'lo' and 'hi' must be nonempty and of equal length");
    return bx;
  }
  if (kind == "sphere") return SphereDomain{j.value("lambda", 1.0), j.value("d", 2)};
  fail(errc::usage, "domain: unknown kind '" + kind + "'");
}

Domain default_centered_domain(int dim, double half_width) {
  if (dim == 1) return IntervalDomain{-half_width, half_width};
  BoxSamplingDomain bx;
  bx.lo.assign(dim, -half_width);
  bx.hi.assign(dim, half_width);
  return bx;
}

KernelSpec difference_kernel(DifferenceProfile profile, Domain dom) {
  KernelSpec k;
  k.dim = profile.dim;
  k.is_real = true;
  k.label = "difference(" + profile.label + ")";
  k.domain = std::move(dom);
  auto h = profile.h;
  k.evaluate = [h](const Point& xi, const Point& eta) { return h(xi - eta); };
  k.profile = std::move(profile);
  return k;
}

} // namespace

DifferenceProfile make_profile(const nlohmann::json& h_descriptor, int dim) {
  nlohmann::json desc = h_descriptor;
  if (desc.is_string()) desc = nlohmann::json{{"type", desc.get<std::string>()}};
  std::string type = desc.value("type", "");
  double scale = desc.value("scale", 1.0);
  double offset = desc.value("offset", 0.0);

  DifferenceProfile p;
  p.dim = dim;
  if (type == "cos") {
    // cos of the coordinate sum; even and real, so h(-t) == conj h(t)
    p.h = [scale, offset](const Point& t) {
      double u = 0.0;
      for (double c : t.coords) u += c;
      return cplx(scale * std::cos(u) + offset, 0.0);
    };
  } else if (type == "gaussian") {
    double width = desc.value("width", 1.0);
    p.h = [scale, offset, width](const Point& t) {
      return cplx(scale * std::exp(-width * norm_sq(t)) + offset, 0.0);
    };
  } else if (type == "mexican-hat") {
    p.h = [scale, offset](const Point& t) {
      double s = norm_sq(t);
      return cplx(scale * (-(1.0 - s) * std::exp(-0.5 * s)) + offset, 0.0);
    };
  } else {
    fail(errc::usage, "make_profile: unknown profile type '" + type + "'");
  }
  std::string label = type;
  if (scale != 1.0) label += ",scale=" + std::to_string(scale);
  if (offset != 0.0) label += ",offset=" + std::to_string(offset);
  if (type == "gaussian" && desc.value("width", 1.0) != 1.0)
    label += ",width=" + std::to_string(desc.value("width", 1.0));
  p.label = label;
  return p;
}

KernelSpec builtin_kernel(const std::string& name, const nlohmann::json& params) {
  if (name == "constant") {
    double c = params.value("c", -1.0);
    KernelSpec k;
    k.dim = params.value("d", 1);
    k.is_real = true;
    k.label = "constant(" + std::to_string(c) + ")";
    k.evaluate = [c](const Point&, const Point&) { return cplx(c, 0.0); };
    k.domain = params.contains("domain") ? domain_from_json(params["domain"])
                                         : Domain(IntervalDomain{0.0, 1.0});
    return k;
  }
  if (name == "difference") {
    int d = params.value("d", 1);
    if (!params.contains("h")) fail(errc::usage, "difference kernel: missing 'h' descriptor");
    DifferenceProfile p = make_profile(params["h"], d);
    Domain dom = params.contains("domain") ? domain_from_json(params["domain"])
                                           : default_centered_domain(d, 6.0);
    return difference_kernel(std::move(p), std::move(dom));
  }
  if (name == "gaussian-bump") {
    int d = params.value("d", 1);
    nlohmann::json h = {{"type", "gaussian"},
                        {"scale", params.value("amp", -1.0)},
                        {"width", params.value("width", 50.0)}};
    DifferenceProfile p = make_profile(h, d);
    Domain dom = params.contains("domain") ? domain_from_json(params["domain"])
                                           : Domain(IntervalDomain{0.0, 1.0});
    KernelSpec k = difference_kernel(std::move(p), std::move(dom));
    k.label = "gaussian-bump(amp=" + std::to_string(params.value("amp", -1.0)) +
              ",width=" + std::to_string(params.value("width", 50.0)) + ")";
    return k;
  }
  if (name == "mexican-hat") {
    int d = params.value("d", 1);
    DifferenceProfile p = make_profile(nlohmann::json{{"type", "mexican-hat"}}, d);
    Domain dom = params.contains("domain") ? domain_from_json(params["domain"])
                                           : default_centered_domain(d, 6.0);
    KernelSpec k = difference_kernel(std::move(p), std::move(dom));
    k.label = "mexican-hat(d=" + std::to_string(d) + ")";
    return k;
  }
  if (name == "dn") {
    if (!params.contains("box")) fail(errc::usage, "dn kernel: missing 'box' side list");
    BoxDomain box = make_box(params["box"].get<std::vector<double>>());
    double lambda = params.value("lambda", 1.0);
    if (!(lambda > 0.0)) fail(errc::usage, "dn kernel: lambda must be positive");
    return build_dn_kernel(box, lambda);
  }
  fail(errc::usage, "builtin_kernel: unknown kernel '" + name + "'");
}

KernelSpec kernel_from_descriptor(const nlohmann::json& descriptor) {
  if (!descriptor.is_object() || !descriptor.contains("name"))
    fail(errc::usage, "kernel descriptor: expected an object with a 'name' field");
  return builtin_kernel(descriptor["name"].get<std::string>(), descriptor);
}

nlohmann::json catalog_json() {
  return nlohmann::json::array({
      {{"name", "constant"},
       {"params", "c (default -1), d, domain"},
       {"kernel", "K(xi,eta) = c"}},
      {{"name", "difference"},
       {"params", "h: {type: cos|gaussian|mexican-hat, scale, offset, width}, d, domain"},
       {"kernel", "K(xi,eta) = h(xi-eta)"}},
      {{"name", "gaussian-bump"},
       {"params", "amp (default -1), width (default 50), d, domain"},
       {"kernel", "K(xi,eta) = amp*exp(-width*|xi-eta|^2)"}},
      {{"name", "mexican-hat"},
       {"params", "d (default 1), domain"},
       {"kernel", "K(xi,eta) = h(xi-eta), h(t) = -(1-|t|^2)*exp(-|t|^2/2)"}},
      {{"name", "dn"},
       {"params", "box: [L1,...,Ld], lambda"},
       {"kernel", "K(xi,eta) = -|xi-eta|^2 * chi_hat_box(xi-eta) on the sphere |xi|=lambda"}},
  });
}

} // namespace sc
