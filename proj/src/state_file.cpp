#include "spinstat/state_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "spinstat/error.hpp"

namespace spinstat {

namespace {

std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + message);
}

int level_index(const std::string& token, HalfInt spin, int line) {
    if (spin.twice() == 1 && (token == "+" || token == "-")) return token == "+" ? 0 : 1;
    HalfInt m;
    try {
        m = HalfInt::parse(token);
    } catch (const Error&) {
        fail(line, "bad level '" + token + "'");
    }
    const int offset = spin.twice() - m.twice();
    if (offset < 0 || offset > 2 * spin.twice() || offset % 2 != 0)
        fail(line, "level " + token + " is not in spin " + spin.to_string());
    return offset / 2;
}

ExactScalar amplitude(const std::string& token, int line) {
    try {
        return ExactScalar::parse(token);
    } catch (const Error& e) {
        fail(line, std::string("bad amplitude: ") + e.what());
    }
}

}  // namespace

std::vector<Ket> StateFile::spinors() const {
    std::vector<Ket> out;
    for (const auto& s : states) out.push_back(s.spinor);
    return out;
}

PermutationExpansion StateFile::expansion() const {
    PermutationExpansion e;
    e.states = states;
    const auto perms = Permutation::all(static_cast<int>(states.size()));
    e.coefficients.assign(perms.size(), Scalar(ExactScalar(0)));
    for (const auto& [p, c] : coefficients) {
        auto it = std::lower_bound(perms.begin(), perms.end(), p);
        if (it == perms.end() || *it != p)
            throw Error(ErrorCode::ShapeMismatch, "coefficient permutation " + p.to_string() + " has the wrong size");
        e.coefficients[static_cast<std::size_t>(it - perms.begin())] = c;
    }
    return e;
}

StateFile StateFile::parse(std::string_view text) {
    StateFile f;
    enum class Block { None, State, Ket } block = Block::None;
    std::map<BasisLabel, Scalar> current;
    std::string current_q;
    std::optional<std::size_t> ket_width;
    std::map<BasisLabel, Scalar> ket_amps;
    bool saw_ket = false;
    bool saw_level = false;

    auto close_state = [&] {
        if (block == Block::State)
            f.states.push_back({current_q, Ket({f.local_dim()}, Mode::Exact, std::move(current))});
        current.clear();
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto words = split_words(raw);
        if (words.empty()) continue;
        const std::string& head = words.front();

        if (head == "spin") {
            if (words.size() != 2) fail(line, "expected 'spin <j>'");
            if (saw_level) fail(line, "'spin' must come before any levels");
            try {
                f.spin = HalfInt::parse(words[1]);
            } catch (const Error&) {
                fail(line, "bad spin '" + words[1] + "'");
            }
            if (f.spin.twice() < 1) fail(line, "spin must be at least 1/2");
        } else if (head == "state") {
            if (words.size() != 2) fail(line, "expected 'state <q-label>'");
            close_state();
            block = Block::State;
            current_q = words[1];
        } else if (head == "ket") {
            if (words.size() != 1) fail(line, "'ket' takes no arguments");
            if (saw_ket) fail(line, "only one ket block is allowed");
            close_state();
            block = Block::Ket;
            saw_ket = true;
        } else if (head == "coefficient") {
            if (words.size() != 3) fail(line, "expected 'coefficient <perm> <amplitude>'");
            std::string list = words[1];
            if (list.size() < 2 || list.front() != '[' || list.back() != ']') fail(line, "permutation must look like [2,1,3]");
            std::vector<int> image;
            std::istringstream items(list.substr(1, list.size() - 2));
            std::string item;
            while (std::getline(items, item, ',')) {
                try {
                    image.push_back(std::stoi(item) - 1);
                } catch (const std::exception&) {
                    fail(line, "bad permutation entry '" + item + "'");
                }
            }
            try {
                f.coefficients.emplace_back(Permutation(image), amplitude(words[2], line));
            } catch (const Error& e) {
                if (e.code() == ErrorCode::Parse) throw;
                fail(line, e.what());
            }
        } else {
            saw_level = true;
            if (block == Block::None) fail(line, "level line outside a 'state' or 'ket' block");
            if (words.size() < 2) fail(line, "expected levels followed by an amplitude");
            BasisLabel label;
            for (std::size_t i = 0; i + 1 < words.size(); ++i) label.push_back(level_index(words[i], f.spin, line));
            const ExactScalar amp = amplitude(words.back(), line);
            auto& target = block == Block::State ? current : ket_amps;
            if (block == Block::State && label.size() != 1) fail(line, "a single-particle level takes one label");
            if (block == Block::Ket) {
                if (ket_width && *ket_width != label.size()) fail(line, "labels have different particle counts");
                ket_width = label.size();
            }
            if (!target.emplace(label, amp).second) fail(line, "duplicate label");
        }
    }
    close_state();
    if (saw_ket) {
        std::vector<int> dims(ket_width.value_or(0), f.local_dim());
        f.ket = Ket(dims, Mode::Exact, std::move(ket_amps));
    }
    return f;
}

StateFile StateFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot read state file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

}  // namespace spinstat
