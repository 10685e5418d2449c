#include "fopid/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fopid/error.hpp"

namespace fopid {
namespace {

[[noreturn]] void config_error(const std::string& message) {
    throw Error(ErrorKind::Config, message);
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ConfigTable parse() {
        ConfigTable table;
        std::string section;
        table[section];
        while (true) {
            skip_blank_lines();
            if (eof()) break;
            const int statement_line = line_;
            if (peek() == '[') {
                ++pos_;
                section = bare_key();
                skip_spaces();
                expect(']');
                end_of_statement();
                if (table.count(section) != 0 && !section.empty()) {
                    fail_at(statement_line, "duplicate section [" + section + "]");
                }
                table[section];
                continue;
            }
            const std::string key = bare_key();
            skip_spaces();
            expect('=');
            skip_spaces();
            ConfigValue value = parse_value();
            end_of_statement();
            auto& entries = table[section];
            if (!entries.emplace(key, std::move(value)).second) {
                fail_at(statement_line, "duplicate key '" + key + "'");
            }
        }
        return table;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }

    [[noreturn]] void fail(const std::string& message) const { fail_at(line_, message); }

    [[noreturn]] static void fail_at(int line, const std::string& message) {
        config_error("config line " + std::to_string(line) + ": " + message);
    }

    void expect(char ch) {
        if (peek() != ch) fail(std::string("expected '") + ch + "'");
        ++pos_;
    }

    void skip_spaces() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
    }

    void skip_comment() {
        if (peek() == '#') {
            while (!eof() && peek() != '\n') ++pos_;
        }
    }

    void skip_blank_lines() {
        while (true) {
            skip_spaces();
            skip_comment();
            if (peek() == '\n') {
                ++pos_;
                ++line_;
                continue;
            }
            return;
        }
    }

    void end_of_statement() {
        skip_spaces();
        skip_comment();
        if (eof()) return;
        if (peek() != '\n') fail("unexpected trailing characters");
        ++pos_;
        ++line_;
    }

    std::string bare_key() {
        skip_spaces();
        const std::size_t start = pos_;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                          peek() == '-')) {
            ++pos_;
        }
        if (start == pos_) fail("expected a key");
        return std::string(text_.substr(start, pos_ - start));
    }

    ConfigValue parse_value() {
        const char ch = peek();
        if (ch == '"') return {parse_string(), std::nullopt, std::nullopt};
        if (ch == '[') return parse_array();
        if (text_.substr(pos_, 4) == "true") {
            pos_ += 4;
            return {true, std::nullopt, std::nullopt};
        }
        if (text_.substr(pos_, 5) == "false") {
            pos_ += 5;
            return {false, std::nullopt, std::nullopt};
        }
        return parse_number();
    }

    std::string parse_string() {
        expect('"');
        std::string out;
        while (true) {
            if (eof() || peek() == '\n') fail("unterminated string");
            const char ch = text_[pos_++];
            if (ch == '"') break;
            if (ch == '\\') {
                if (eof()) fail("unterminated string");
                const char esc = text_[pos_++];
                switch (esc) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail(std::string("unsupported escape \\") + esc);
                }
                continue;
            }
            out += ch;
        }
        return out;
    }

    ConfigValue parse_number() {
        const std::size_t start = pos_;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' ||
                          peek() == '+' || peek() == '-' || peek() == '_')) {
            ++pos_;
        }
        std::string token(text_.substr(start, pos_ - start));
        std::erase(token, '_');
        if (token.empty()) fail("expected a value");
        ConfigValue out;
        const char* first = token.data();
        const char* last = token.data() + token.size();
        if (*first == '+') ++first;
        double d = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, d);
        if (ec != std::errc() || ptr != last) fail("invalid value '" + token + "'");
        out.value = d;
        if (token.find_first_of(".eEn") == std::string::npos) {
            long long i = 0;
            if (auto r = std::from_chars(first, last, i); r.ec == std::errc() && r.ptr == last) {
                out.integer = i;
            }
            unsigned long long u = 0;
            if (auto r = std::from_chars(first, last, u); r.ec == std::errc() && r.ptr == last) {
                out.unsigned_integer = u;
            }
        }
        return out;
    }

    void skip_array_space() {
        while (true) {
            skip_spaces();
            skip_comment();
            if (peek() == '\n') {
                ++pos_;
                ++line_;
                continue;
            }
            return;
        }
    }

    ConfigValue parse_array() {
        expect('[');
        ConfigValue::Array items;
        skip_array_space();
        if (peek() == ']') {
            ++pos_;
            return {std::move(items), std::nullopt, std::nullopt};
        }
        while (true) {
            skip_array_space();
            if (peek() == ']') break;  // trailing comma
            items.push_back(parse_value());
            skip_array_space();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            if (peek() == ']') break;
            fail("expected ',' or ']' in array");
        }
        expect(']');
        return {std::move(items), std::nullopt, std::nullopt};
    }
};

// Typed accessors over one section; tracks which keys were consumed so that
// leftovers can be reported as unknown.
class Section {
public:
    Section(std::string name, const std::map<std::string, ConfigValue>* entries)
        : name_(std::move(name)), entries_(entries) {}

    const ConfigValue* find(const std::string& key) {
        if (entries_ == nullptr) return nullptr;
        const auto it = entries_->find(key);
        if (it == entries_->end()) return nullptr;
        used_.insert(key);
        return &it->second;
    }

    std::optional<double> number(const std::string& key) {
        const ConfigValue* v = find(key);
        if (v == nullptr) return std::nullopt;
        if (const double* d = std::get_if<double>(&v->value)) return *d;
        fail_type(key, "a number");
    }

    std::optional<std::string> string(const std::string& key) {
        const ConfigValue* v = find(key);
        if (v == nullptr) return std::nullopt;
        if (const auto* s = std::get_if<std::string>(&v->value)) return *s;
        fail_type(key, "a string");
    }

    std::optional<std::size_t> count(const std::string& key) {
        const ConfigValue* v = find(key);
        if (v == nullptr) return std::nullopt;
        if (!v->integer || *v->integer < 0) fail_type(key, "a nonnegative integer");
        return static_cast<std::size_t>(*v->integer);
    }

    std::optional<std::uint64_t> u64(const std::string& key) {
        const ConfigValue* v = find(key);
        if (v == nullptr) return std::nullopt;
        if (!v->unsigned_integer) fail_type(key, "an unsigned 64-bit integer");
        return *v->unsigned_integer;
    }

    std::optional<std::vector<FractionalTerm>> terms(const std::string& key) {
        const ConfigValue* v = find(key);
        if (v == nullptr) return std::nullopt;
        const auto* items = std::get_if<ConfigValue::Array>(&v->value);
        if (items == nullptr) fail_type(key, "an array of [coeff, order] pairs");
        std::vector<FractionalTerm> out;
        for (const auto& item : *items) {
            const auto* pair = std::get_if<ConfigValue::Array>(&item.value);
            if (pair == nullptr || pair->size() != 2 ||
                !std::holds_alternative<double>((*pair)[0].value) ||
                !std::holds_alternative<double>((*pair)[1].value)) {
                fail_type(key, "an array of [coeff, order] pairs");
            }
            out.push_back({std::get<double>((*pair)[0].value), std::get<double>((*pair)[1].value)});
        }
        return out;
    }

    void reject_unknown() const {
        if (entries_ == nullptr) return;
        for (const auto& [key, _] : *entries_) {
            if (used_.count(key) == 0) {
                config_error("unknown key '" + qualified(key) + "'");
            }
        }
    }

private:
    std::string name_;
    const std::map<std::string, ConfigValue>* entries_;
    std::set<std::string> used_;

    std::string qualified(const std::string& key) const {
        return name_.empty() ? key : name_ + "." + key;
    }

    [[noreturn]] void fail_type(const std::string& key, const char* expected) const {
        config_error("key '" + qualified(key) + "' must be " + expected);
    }
};

template <typename Fn>
auto wrap_invalid(const char* where, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        config_error(std::string(where) + ": " + e.what());
    }
}

}  // namespace

ConfigTable parse_config_table(std::string_view text) { return Parser(text).parse(); }

JobConfig parse_job_config(std::string_view text) {
    const ConfigTable table = parse_config_table(text);
    static const std::set<std::string> known{"", "plant", "controller", "sim", "pso", "output"};
    for (const auto& [name, entries] : table) {
        if (known.count(name) == 0) config_error("unknown section [" + name + "]");
        if (name.empty() && !entries.empty()) {
            config_error("unknown key '" + entries.begin()->first + "' (keys must be in a section)");
        }
    }
    auto section = [&](const std::string& name) {
        const auto it = table.find(name);
        return Section(name, it == table.end() ? nullptr : &it->second);
    };

    JobConfig job;

    Section plant = section("plant");
    {
        auto num = plant.terms("numerator");
        auto den = plant.terms("denominator");
        if (num || den) {
            job.plant = wrap_invalid("plant", [&] {
                return FractionalTransferFunction(num.value_or(std::vector<FractionalTerm>{{1.0, 0.0}}),
                                                  den.value_or(std::vector<FractionalTerm>{}));
            });
        }
    }
    plant.reject_unknown();

    Section ctrl = section("controller");
    if (auto v = ctrl.string("kind")) job.kind = wrap_invalid("controller.kind", [&] { return parse_controller_kind(*v); });
    if (auto v = ctrl.string("realization")) {
        job.realization = wrap_invalid("controller.realization", [&] { return parse_realization(*v); });
    }
    {
        auto kp = ctrl.number("kp");
        auto ti = ctrl.number("ti");
        auto td = ctrl.number("td");
        auto lambda = ctrl.number("lambda");
        auto delta = ctrl.number("delta");
        job.has_params = kp || ti || td || lambda || delta;
        job.params = {kp.value_or(0.0), ti.value_or(0.0), td.value_or(0.0), lambda.value_or(1.0),
                      delta.value_or(1.0)};
        if (job.kind == ControllerKind::Pid && (lambda || delta) &&
            (job.params.lambda != 1.0 || job.params.delta != 1.0)) {
            config_error("controller.kind = \"pid\" fixes lambda = delta = 1");
        }
        if (job.has_params) wrap_invalid("controller", [&] { job.params.validate(); return 0; });
    }
    if (auto v = ctrl.number("gain_lower")) job.space.gain_lower = *v;
    if (auto v = ctrl.number("gain_upper")) job.space.gain_upper = *v;
    if (auto v = ctrl.number("order_lower")) job.space.order_lower = *v;
    if (auto v = ctrl.number("order_upper")) job.space.order_upper = *v;
    if (auto v = ctrl.number("velocity_init")) job.space.velocity_init = *v;
    ctrl.reject_unknown();

    Section sim = section("sim");
    if (auto v = sim.number("step")) job.sim.step = *v;
    if (auto v = sim.number("horizon")) job.sim.horizon = *v;
    if (auto v = sim.string("feedback")) {
        job.sim.feedback = wrap_invalid("sim.feedback", [&] { return parse_feedback_mode(*v); });
    }
    if (auto v = sim.count("cfe_order")) job.sim.cfe_order = static_cast<int>(*v);
    if (const ConfigValue* v = sim.find("memory")) {
        if (const auto* s = std::get_if<std::string>(&v->value); s != nullptr && *s == "full") {
            job.sim.memory = Memory::full();
        } else if (v->integer && *v->integer >= 0) {
            job.sim.memory = Memory::last(static_cast<std::size_t>(*v->integer));
        } else {
            config_error("key 'sim.memory' must be \"full\" or a nonnegative integer");
        }
    }
    if (auto v = sim.number("amplitude")) job.amplitude = *v;
    if (auto v = sim.string("index")) job.index = wrap_invalid("sim.index", [&] { return parse_index_kind(*v); });
    if (auto v = sim.number("penalty")) job.penalty = *v;
    sim.reject_unknown();
    wrap_invalid("sim", [&] { job.sim.validate(); return 0; });

    Section pso = section("pso");
    if (auto v = pso.count("swarm_size")) job.pso.swarm_size = *v;
    if (auto v = pso.count("max_iterations")) job.pso.max_iterations = *v;
    if (auto v = pso.number("c1")) job.pso.c1 = *v;
    if (auto v = pso.number("c2")) job.pso.c2 = *v;
    if (auto v = pso.number("inertia_start")) job.pso.inertia_start = *v;
    if (auto v = pso.number("inertia_end")) job.pso.inertia_end = *v;
    if (auto v = pso.u64("seed")) job.pso.seed = *v;
    if (auto v = pso.number("tolerance")) job.pso.tolerance = *v;
    if (auto v = pso.count("threads")) job.pso.threads = *v;
    pso.reject_unknown();
    wrap_invalid("pso", [&] { job.pso.validate(); return 0; });

    Section output = section("output");
    if (auto v = output.string("path")) job.output_path = *v;
    if (auto v = output.string("dir")) job.output_dir = *v;
    output.reject_unknown();

    return job;
}

JobConfig load_job_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) config_error("cannot read config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_job_config(buffer.str());
}

TuningProblem JobConfig::problem() const {
    TuningProblem p{plant, kind, realization, sim, index, pso, space, amplitude, penalty};
    return p;
}

}  // namespace fopid
