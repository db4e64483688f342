#include "bowl/instance.hpp"

#include "bowl/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bowl {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

[[noreturn]] void parse_fail(int line, const std::string &what) {
    throw InputError("line " + std::to_string(line) + ": " + what);
}

int parse_int(std::string_view token, int line, const char *what) {
    token = trim(token);
    if (token.empty()) parse_fail(line, std::string("missing ") + what);
    std::size_t pos = 0;
    if (token.front() == '-' || token.front() == '+') pos = 1;
    if (pos == token.size()) parse_fail(line, std::string("not an integer ") + what + ": '" + std::string(token) + "'");
    for (std::size_t i = pos; i < token.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(token[i])))
            parse_fail(line, std::string("not an integer ") + what + ": '" + std::string(token) + "'");
    try {
        return std::stoi(std::string(token));
    } catch (const std::out_of_range &) {
        parse_fail(line, std::string("integer out of range ") + what + ": '" + std::string(token) + "'");
    }
}

Precedence parse_pair(std::string_view text, int line) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) parse_fail(line, "expected 'i,j' precedence pair");
    return {parse_int(text.substr(0, comma), line, "predecessor id"),
            parse_int(text.substr(comma + 1), line, "successor id")};
}

std::vector<std::string> validate_precedence(const std::vector<int> &ids,
                                             const std::vector<Precedence> &precedence) {
    std::vector<std::string> out;
    std::set<int> known(ids.begin(), ids.end());
    bool references_ok = true;
    for (const auto &p : precedence) {
        if (!known.count(p.before) || !known.count(p.after)) {
            out.push_back("precedence references unknown task: (" + std::to_string(p.before) + "," +
                          std::to_string(p.after) + ")");
            references_ok = false;
        }
    }
    if (references_ok && known.size() == ids.size() && !topological_order(ids, precedence))
        out.emplace_back("precedence relation has a cycle");
    return out;
}

std::vector<std::string> validate_ids(const std::vector<int> &ids) {
    std::vector<std::string> out;
    std::set<int> seen;
    for (int id : ids) {
        if (id <= 0) out.push_back("task id must be positive: " + std::to_string(id));
        if (!seen.insert(id).second) out.push_back("duplicate task id: " + std::to_string(id));
    }
    return out;
}

void throw_if_invalid(const std::vector<std::string> &violations) {
    if (violations.empty()) return;
    std::string message = "invalid instance:";
    for (const auto &v : violations) message += " " + v + ";";
    message.pop_back();
    throw InputError(message);
}

std::string read_all(std::istream &in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        auto nl = text.find('\n');
        lines.push_back(text.substr(0, nl));
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return lines;
}

std::vector<std::string_view> split_ws(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) tokens.push_back(text.substr(start, i - start));
    }
    return tokens;
}

std::string format_time(const Rational &time) {
    if (!is_integer(time)) throw InputError("task time is not an integer: " + format_rational(time));
    return format_rational(time);
}

std::vector<int> salbp_ids(const SalbpInstance &instance) {
    std::vector<int> ids;
    ids.reserve(instance.tasks.size());
    for (const auto &t : instance.tasks) ids.push_back(t.id);
    return ids;
}

} // namespace

std::optional<std::vector<int>> topological_order(const std::vector<int> &ids,
                                                  const std::vector<Precedence> &precedence) {
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
    if (index.size() != ids.size()) return std::nullopt;

    std::vector<std::vector<std::size_t>> successors(ids.size());
    std::vector<int> indegree(ids.size(), 0);
    for (const auto &p : precedence) {
        auto a = index.find(p.before);
        auto b = index.find(p.after);
        if (a == index.end() || b == index.end()) return std::nullopt;
        successors[a->second].push_back(b->second);
        ++indegree[b->second];
    }

    // Smallest position first keeps the order stable and deterministic.
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (indegree[i] == 0) ready.insert(i);
    std::vector<int> order;
    order.reserve(ids.size());
    while (!ready.empty()) {
        std::size_t i = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(ids[i]);
        for (std::size_t j : successors[i])
            if (--indegree[j] == 0) ready.insert(j);
    }
    if (order.size() != ids.size()) return std::nullopt;
    return order;
}

std::vector<std::string> validate(const SalbpInstance &instance) {
    std::vector<std::string> out;
    if (instance.tasks.empty()) out.emplace_back("instance has no tasks");
    if (instance.stations < 1) out.emplace_back("stations ≥ 1 violated");
    const auto ids = salbp_ids(instance);
    for (auto &v : validate_ids(ids)) out.push_back(std::move(v));
    for (const auto &t : instance.tasks)
        if (t.time < 0) out.push_back("time ≥ 0 violated: task " + std::to_string(t.id));
    for (auto &v : validate_precedence(ids, instance.precedence)) out.push_back(std::move(v));
    return out;
}

std::vector<std::string> validate(const AlwabpInstance &instance) {
    std::vector<std::string> out;
    if (instance.task_ids.empty()) out.emplace_back("instance has no tasks");
    if (instance.workers < 1) out.emplace_back("workers ≥ 1 violated");
    if (instance.stations < 1) out.emplace_back("stations ≥ 1 violated");
    if (instance.workers != instance.stations) out.emplace_back("worker/station count mismatch");
    for (auto &v : validate_ids(instance.task_ids)) out.push_back(std::move(v));

    bool shape_ok = instance.times.size() == static_cast<std::size_t>(std::max(instance.workers, 0));
    for (const auto &row : instance.times)
        if (row.size() != instance.task_ids.size()) shape_ok = false;
    if (!shape_ok) {
        out.emplace_back("time matrix dimension mismatch");
    } else {
        for (std::size_t i = 0; i < instance.task_ids.size(); ++i) {
            bool capable = false;
            for (std::size_t w = 0; w < instance.times.size(); ++w) {
                const auto &p = instance.times[w][i];
                if (!p) continue;
                capable = true;
                if (*p < 0)
                    out.push_back("time ≥ 0 violated: task " + std::to_string(instance.task_ids[i]) +
                                  " worker " + std::to_string(w + 1));
            }
            if (!capable)
                out.push_back("task " + std::to_string(instance.task_ids[i]) + " has no capable worker");
        }
    }
    for (auto &v : validate_precedence(instance.task_ids, instance.precedence)) out.push_back(std::move(v));
    return out;
}

SalbpInstance parse_alb(std::string_view text, int stations) {
    enum class Section { None, Count, Times, Relations, Skipped, End };
    SalbpInstance instance;
    instance.stations = stations;
    std::optional<int> declared;
    Section section = Section::None;

    const auto lines = split_lines(text);
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const int line_no = static_cast<int>(k + 1);
        auto line = trim(lines[k]);
        if (line.empty()) continue;
        if (section == Section::End) parse_fail(line_no, "content after <end>");

        if (line.front() == '<') {
            if (line.back() != '>') parse_fail(line_no, "malformed section header '" + std::string(line) + "'");
            const auto header = lower(trim(line.substr(1, line.size() - 2)));
            if (header == "number of tasks") section = Section::Count;
            else if (header == "task times") section = Section::Times;
            else if (header == "precedence relations") section = Section::Relations;
            else if (header == "end") section = Section::End;
            else section = Section::Skipped;
            continue;
        }

        switch (section) {
        case Section::None:
            parse_fail(line_no, "data outside of any section");
        case Section::Count:
            if (declared) parse_fail(line_no, "duplicate task count");
            declared = parse_int(line, line_no, "task count");
            if (*declared < 1) parse_fail(line_no, "task count must be positive");
            break;
        case Section::Times: {
            auto tokens = split_ws(line);
            if (tokens.size() != 2) parse_fail(line_no, "expected 'id time'");
            Task task{parse_int(tokens[0], line_no, "task id"), Rational(parse_int(tokens[1], line_no, "task time"))};
            instance.tasks.push_back(std::move(task));
            break;
        }
        case Section::Relations:
            instance.precedence.push_back(parse_pair(line, line_no));
            break;
        case Section::Skipped:
        case Section::End:
            break;
        }
    }

    if (section != Section::End) throw InputError("missing <end> section");
    if (!declared) throw InputError("missing <number of tasks> section");
    if (instance.tasks.size() != static_cast<std::size_t>(*declared))
        throw InputError("declared " + std::to_string(*declared) + " tasks but found " +
                         std::to_string(instance.tasks.size()) + " task times");
    throw_if_invalid(validate(instance));
    return instance;
}

SalbpInstance parse_alb(std::istream &in, int stations) { return parse_alb(read_all(in), stations); }

void write_alb(std::ostream &out, const SalbpInstance &instance) {
    out << "<number of tasks>\n" << instance.tasks.size() << "\n\n<task times>\n";
    for (const auto &t : instance.tasks) out << t.id << ' ' << format_time(t.time) << '\n';
    out << "\n<precedence relations>\n";
    for (const auto &p : instance.precedence) out << p.before << ',' << p.after << '\n';
    out << "\n<end>\n";
}

std::string write_alb(const SalbpInstance &instance) {
    std::ostringstream out;
    write_alb(out, instance);
    return out.str();
}

AlwabpInstance parse_alwabp(std::string_view text) {
    AlwabpInstance instance;
    const auto lines = split_lines(text);
    std::size_t k = 0;
    auto next_line = [&]() -> std::optional<std::pair<int, std::string_view>> {
        while (k < lines.size()) {
            auto line = trim(lines[k++]);
            if (!line.empty()) return std::pair{static_cast<int>(k), line};
        }
        return std::nullopt;
    };

    auto header = next_line();
    if (!header) throw InputError("empty ALWABP file");
    auto head_tokens = split_ws(header->second);
    if (head_tokens.size() != 2) parse_fail(header->first, "expected 'tasks workers' header");
    const int n = parse_int(head_tokens[0], header->first, "task count");
    const int w = parse_int(head_tokens[1], header->first, "worker count");
    if (n < 1) parse_fail(header->first, "task count must be positive");
    if (w < 1) parse_fail(header->first, "worker count must be positive");

    instance.workers = w;
    instance.stations = w;
    instance.times.assign(static_cast<std::size_t>(w), std::vector<WorkerTime>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        auto row = next_line();
        if (!row) throw InputError("time matrix dimension mismatch: expected " + std::to_string(n) + " rows");
        auto tokens = split_ws(row->second);
        if (tokens.size() != static_cast<std::size_t>(w))
            parse_fail(row->first, "time matrix dimension mismatch: expected " + std::to_string(w) +
                                       " entries, found " + std::to_string(tokens.size()));
        for (int j = 0; j < w; ++j) {
            const auto token = tokens[static_cast<std::size_t>(j)];
            if (lower(token) == "inf") continue;
            instance.times[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                Rational(parse_int(token, row->first, "task time"));
        }
        instance.task_ids.push_back(i + 1);
    }

    auto marker = next_line();
    if (!marker || lower(marker->second) != "precedence")
        throw InputError("time matrix dimension mismatch or missing 'precedence' line");
    bool ended = false;
    while (auto line = next_line()) {
        if (ended) parse_fail(line->first, "content after 'end'");
        if (lower(line->second) == "end") {
            ended = true;
            continue;
        }
        instance.precedence.push_back(parse_pair(line->second, line->first));
    }
    if (!ended) throw InputError("missing 'end' line");
    throw_if_invalid(validate(instance));
    return instance;
}

AlwabpInstance parse_alwabp(std::istream &in) { return parse_alwabp(read_all(in)); }

void write_alwabp(std::ostream &out, const AlwabpInstance &instance) {
    // The file format numbers tasks 1..n by row; ids are not stored.
    for (std::size_t i = 0; i < instance.task_ids.size(); ++i)
        if (instance.task_ids[i] != static_cast<int>(i + 1))
            throw InputError("ALWABP files require task ids 1..n in order");
    out << instance.task_ids.size() << ' ' << instance.workers << '\n';
    for (std::size_t i = 0; i < instance.task_ids.size(); ++i) {
        for (std::size_t w = 0; w < instance.times.size(); ++w) {
            if (w) out << ' ';
            const auto &p = instance.times[w][i];
            out << (p ? format_time(*p) : std::string("Inf"));
        }
        out << '\n';
    }
    out << "precedence\n";
    for (const auto &p : instance.precedence) out << p.before << ',' << p.after << '\n';
    out << "end\n";
}

std::string write_alwabp(const AlwabpInstance &instance) {
    std::ostringstream out;
    write_alwabp(out, instance);
    return out.str();
}

SalbpInstance load_alb_file(const std::string &path, int stations) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file: " + path);
    try {
        return parse_alb(in, stations);
    } catch (const InputError &e) {
        throw InputError(path + ": " + e.what());
    }
}

AlwabpInstance load_alwabp_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file: " + path);
    try {
        return parse_alwabp(in);
    } catch (const InputError &e) {
        throw InputError(path + ": " + e.what());
    }
}

} // namespace bowl
