#include "banditlab/serialization.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace banditlab {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view token) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw std::invalid_argument("parse_double: bad token '" + std::string(token) + "'");
    return value;
}

namespace {

void write_row(std::ostream& os, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) os << ' ';
        os << format_double(v[i]);
    }
    os << '\n';
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) write_row(os, m.row(r).transpose());
}

/// Line-oriented reader that tracks position for error messages.
class LineReader {
public:
    explicit LineReader(std::istream& is) : is_(is) {}

    /// Next non-empty, non-comment line split into whitespace tokens.
    /// Returns false at end of input.
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(is_, line)) {
            ++line_no_;
            tokens.clear();
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) {
                if (tok[0] == '#') break;
                tokens.push_back(tok);
            }
            if (!tokens.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("problem file, line " + std::to_string(line_no_) + ": " + msg);
    }

    void expect(std::vector<std::string>& tokens, const std::string& keyword, size_t n_args) {
        if (!next(tokens)) fail("unexpected end of file, expected '" + keyword + "'");
        if (tokens[0] != keyword) fail("expected '" + keyword + "', got '" + tokens[0] + "'");
        if (tokens.size() != n_args + 1)
            fail("'" + keyword + "' takes " + std::to_string(n_args) + " argument(s)");
    }

    double as_double(const std::string& tok) {
        try {
            return parse_double(tok);
        } catch (const std::invalid_argument&) {
            fail("bad number '" + tok + "'");
        }
    }

    long as_count(const std::string& tok) {
        long value = 0;
        const char* first = tok.data();
        const char* last = first + tok.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || value < 0) fail("bad count '" + tok + "'");
        return value;
    }

    /// Read `rows` lines of exactly `cols` numbers each.
    Eigen::MatrixXd read_matrix(Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXd m(rows, cols);
        std::vector<std::string> tokens;
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (!next(tokens)) fail("unexpected end of file inside a number block");
            if (static_cast<Eigen::Index>(tokens.size()) != cols)
                fail("expected " + std::to_string(cols) + " numbers, got " +
                     std::to_string(tokens.size()));
            for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = as_double(tokens[c]);
        }
        return m;
    }

private:
    std::istream& is_;
    long line_no_ = 0;
};

}  // namespace

void save_problem(const ContextualProblem& problem, std::ostream& os) {
    if (!problem.is_finite())
        throw std::invalid_argument("save_problem: continuous problems cannot be serialized");

    const int n = problem.n_contexts();
    const int k = problem.n_arms();
    os << "banditlab problem 1\n";
    os << "noise_std " << format_double(problem.noise_std()) << '\n';
    os << "contexts " << n << '\n';
    os << "arms " << k << '\n';
    os << "reps " << problem.n_reps() << '\n';
    os << "rho\n";
    write_row(os, problem.rho());
    os << "mu\n";
    write_matrix(os, problem.mean_reward());
    for (int i = 0; i < problem.n_reps(); ++i) {
        const FiniteRepresentation& rep = problem.rep(i);
        std::string label = rep.label.empty() ? "rep_" + std::to_string(i) : rep.label;
        if (label.find_first_of(" \t#") != std::string::npos)
            throw std::invalid_argument("save_problem: label '" + label +
                                        "' contains whitespace or '#'");
        os << "rep " << i << '\n';
        os << "label " << label << '\n';
        os << "dim " << rep.dim() << '\n';
        os << "feature_bound " << format_double(rep.feature_bound) << '\n';
        os << "param_bound " << format_double(rep.param_bound) << '\n';
        os << "theta\n";
        write_row(os, rep.param);
        os << "features\n";
        for (int x = 0; x < n; ++x) write_matrix(os, rep.features[x]);
        if (rep.has_misspec()) {
            os << "misspec\n";
            write_matrix(os, rep.misspec);
        }
        os << "end rep\n";
    }
    os << "end problem\n";
}

void save_problem_file(const ContextualProblem& problem, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("save_problem_file: cannot open '" + path + "'");
    save_problem(problem, os);
    if (!os) throw std::runtime_error("save_problem_file: write to '" + path + "' failed");
}

ContextualProblem load_problem(std::istream& is) {
    LineReader reader(is);
    std::vector<std::string> tok;

    if (!reader.next(tok)) reader.fail("empty file");
    if (tok.size() != 3 || tok[0] != "banditlab" || tok[1] != "problem")
        reader.fail("expected header 'banditlab problem 1'");
    if (tok[2] != "1") reader.fail("unsupported format version '" + tok[2] + "'");

    reader.expect(tok, "noise_std", 1);
    const double noise_std = reader.as_double(tok[1]);
    reader.expect(tok, "contexts", 1);
    const long n = reader.as_count(tok[1]);
    reader.expect(tok, "arms", 1);
    const long k = reader.as_count(tok[1]);
    reader.expect(tok, "reps", 1);
    const long m = reader.as_count(tok[1]);
    if (n <= 0 || k <= 0 || m <= 0) reader.fail("contexts, arms and reps must be positive");

    reader.expect(tok, "rho", 0);
    const Eigen::VectorXd rho = reader.read_matrix(1, n).row(0).transpose();
    reader.expect(tok, "mu", 0);
    const Eigen::MatrixXd mu = reader.read_matrix(n, k);

    std::vector<FiniteRepresentation> reps;
    reps.reserve(static_cast<size_t>(m));
    for (long i = 0; i < m; ++i) {
        reader.expect(tok, "rep", 1);
        if (reader.as_count(tok[1]) != i) reader.fail("representations must be numbered in order");

        if (!reader.next(tok)) reader.fail("unexpected end of file inside rep");
        if (tok[0] != "label" || tok.size() != 2) reader.fail("expected 'label <name>'");
        FiniteRepresentation rep;
        rep.label = tok[1];

        reader.expect(tok, "dim", 1);
        const long d = reader.as_count(tok[1]);
        if (d <= 0) reader.fail("dim must be positive");
        reader.expect(tok, "feature_bound", 1);
        rep.feature_bound = reader.as_double(tok[1]);
        reader.expect(tok, "param_bound", 1);
        rep.param_bound = reader.as_double(tok[1]);

        reader.expect(tok, "theta", 0);
        rep.param = reader.read_matrix(1, d).row(0).transpose();
        reader.expect(tok, "features", 0);
        rep.features.reserve(static_cast<size_t>(n));
        for (long x = 0; x < n; ++x) rep.features.push_back(reader.read_matrix(k, d));

        if (!reader.next(tok)) reader.fail("unexpected end of file inside rep");
        if (tok.size() == 1 && tok[0] == "misspec") {
            rep.misspec = reader.read_matrix(n, k);
            if (!reader.next(tok)) reader.fail("unexpected end of file inside rep");
        }
        if (tok.size() != 2 || tok[0] != "end" || tok[1] != "rep") reader.fail("expected 'end rep'");
        reps.push_back(std::move(rep));
    }

    reader.expect(tok, "end", 1);
    if (tok[1] != "problem") reader.fail("expected 'end problem'");
    if (reader.next(tok)) reader.fail("trailing data after 'end problem'");

    return ContextualProblem::finite(rho, mu, noise_std, std::move(reps));
}

ContextualProblem load_problem_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("load_problem_file: cannot open '" + path + "'");
    return load_problem(is);
}

}  // namespace banditlab
