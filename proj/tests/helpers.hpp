#pragma once

#include <string>
#include <vector>

#include "gplastic/chart.hpp"
#include "gplastic/numberfield.hpp"

namespace testing_support {

inline gplastic::FieldElem F(const std::string& s) { return gplastic::FieldElem::parse(s); }

inline gplastic::RationalFn fn(const gplastic::Chart& c, const std::string& s) { return c.parse(s); }

inline gplastic::FnMatrix mat(const gplastic::Chart& c, const std::vector<std::vector<std::string>>& rows) {
  return gplastic::FnMatrix::parse(c, rows);
}

template <class Tag>
gplastic::FieldVec<Tag> vec(const gplastic::Chart& c, const std::vector<std::string>& comps) {
  std::vector<gplastic::RationalFn> v;
  for (const auto& s : comps) v.push_back(c.parse(s));
  return gplastic::FieldVec<Tag>(v);
}

inline gplastic::VectorField vf(const gplastic::Chart& c, const std::vector<std::string>& comps) {
  return vec<gplastic::VectorTag>(c, comps);
}
inline gplastic::OneForm form(const gplastic::Chart& c, const std::vector<std::string>& comps) {
  return vec<gplastic::FormTag>(c, comps);
}

}  // namespace testing_support
