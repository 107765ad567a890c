#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rostlab/verify.hpp"

namespace rostlab {

// Result of one eval expression: a cohomology class, a decomposition
// pair, or a degree-1 class printed as its class vector.
struct EvalValue {
    enum class Kind { Class, Pair, Vector };
    Kind kind = Kind::Class;
    std::optional<CohClass> cls;
    std::optional<std::pair<CohClass, CohClass>> parts;
};

/***
 * Handle registry plus the expression front end.  A session is
 * rebuilt from its config file on every run, so identical configs
 * replay to identical handles and identical output.
 *
 * Config files hold one directive per line ('#' starts a comment):
 *   field NAME q=3 ell=2 n=1 depth=2 [precision=8]
 *   ext NAME field=F kind=kummer b=<element> m=1
 *   ext NAME field=F kind=unramified f=2
 *
 * Element expressions use the generators zeta (alias u) and x1..xd,
 * integer scalars, and + - * / ^ with parentheses; they must not
 * contain whitespace inside config values.
 */
class Session {
public:
    Session() = default;

    void load_config(const std::string& path);
    void apply_directive(const std::string& line);

    std::string add_field(TowerField F);  // auto handle F1, F2, ...
    void add_field(const std::string& name, TowerField F);
    std::string add_extension(CyclicExtension E);  // auto handle E1, ...
    void add_extension(const std::string& name, CyclicExtension E);

    bool has_field(const std::string& name) const;
    const TowerField& field(const std::string& name) const;
    const CyclicExtension& extension(const std::string& name) const;

    // Most recently defined field; the implicit context for
    // expressions that do not name a handle.
    const TowerField& current_field() const;

    const std::map<std::string, TowerField>& fields() const { return fields_; }
    const std::map<std::string, CyclicExtension>& extensions() const {
        return exts_;
    }
    const std::string& config_path() const { return config_path_; }

    // Element expression over an explicit field.
    FieldElement parse_element(const std::string& expr,
                               const TowerField& F) const;

    // Eval expression: symbol {..} [handle] | residue E | cup E E |
    // decompose E | class <element> [handle], parenthesized freely.
    EvalValue eval(const std::string& expr) const;

private:
    std::map<std::string, TowerField> fields_;
    std::map<std::string, CyclicExtension> exts_;
    std::string current_;
    std::string config_path_;
    int next_field_ = 1;
    int next_ext_ = 1;
};

// JSON forms.  Plain nlohmann::json keeps keys sorted, which the
// byte-identical replay contract relies on; callers add the top-level
// "schema" tag when printing a whole document.
nlohmann::json json_of(const Subgroup& G);
nlohmann::json json_of(const CohClass& c);
nlohmann::json json_of(const RostReport& rep);
nlohmann::json json_of(const SuiteResult& res);
nlohmann::json json_of(const EvalValue& v);

}  // namespace rostlab
