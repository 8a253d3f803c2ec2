#ifndef BW_IO_HPP
#define BW_IO_HPP

#include <memory>
#include <string>

#include <json.hpp>

#include "bw/factorization.hpp"

namespace bw::io {

using nlohmann::json;

// Every file carries a "kind" discriminator: category, functor, or
// natural_system. Functor files reference their category files by path
// (relative to the functor file). All references use user-chosen string ids;
// internal indices never appear on disk.

json category_to_json(const cat::FinCat& c);
cat::FinCat category_from_json(const json& j);  // validated

json functor_to_json(const cat::FunctorMap& f, const std::string& source_path,
                     const std::string& target_path);

/// A functor together with ownership of its endpoint categories.
struct LoadedFunctor {
    std::shared_ptr<cat::FinCat> src, dst;
    cat::FunctorMap map;
};
LoadedFunctor functor_from_json(const json& j, const std::string& base_dir);

/// Natural-system files require every value group to be presented in normal
/// form (free generators then one generator per invariant factor), which is
/// how all shipped systems are built (error SystemNotNormalForm otherwise).
json system_to_json(const fact::NaturalSystem& d);
fact::NaturalSystem system_from_json(const json& j, const cat::FinCat& c);  // validated

json load_file(const std::string& path);      // error FileUnreadable / ParseError
void save_file(const std::string& path, const json& j);

/// Graphviz rendering: objects as nodes, non-identity morphisms as edges.
std::string to_dot(const cat::FinCat& c);

}  // namespace bw::io

#endif
