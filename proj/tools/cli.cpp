#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "mexico.hpp"
#include "segvsa/algebra.hpp"
#include "segvsa/binary_io.hpp"
#include "segvsa/cleanup.hpp"
#include "segvsa/embedding.hpp"
#include "segvsa/learner.hpp"
#include "segvsa/structures.hpp"

namespace segvsa::cli {

namespace {

namespace fs = std::filesystem;

// Raised for a failed lookup that should map to kNotFound.
class not_found : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::uint32_t dim = SpaceConfig::kDefaultDimension;
    std::uint32_t segwidth = SpaceConfig::kDefaultSegmentWidth;
    std::uint64_t seed = 0;
    std::int64_t threshold = -1;  // -1: module default
    std::uint32_t window = VocabularyModel::kDefaultWindow;
    std::size_t topk = 3;

    SpaceConfig space() const { return SpaceConfig(dim, segwidth); }
};

constexpr std::uint64_t kTrainStreamKey = 0x747261696e;  // "train"
constexpr std::size_t kMatrixLimit = 32;

void print_matches(std::ostream& out, const std::vector<Match>& matches) {
    for (const auto& m : matches) {
        out << "match\t" << m.rank << '\t' << m.label << '\t' << m.overlap << '\n';
    }
}

void print_space(std::ostream& out, const SpaceConfig& space) {
    out << "dimension\t" << space.dimension() << '\n'
        << "segment_width\t" << space.segment_width() << '\n'
        << "segment_count\t" << space.segment_count() << '\n';
}

std::string read_file(const fs::path& path) {
    auto in = io::open_for_read(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- rand

struct RandArgs {
    std::size_t count = 1;
    std::string out;
    std::string prefix = "c";
};

int cmd_rand(const Options& opt, const RandArgs& args, std::ostream& out) {
    const SpaceConfig space = opt.space();
    RngStream rng(opt.seed);
    Codebook book(space);
    for (std::size_t i = 0; i < args.count; ++i) {
        book.insert(args.prefix + std::to_string(i), random_code(space, rng));
    }
    save_codebook(args.out, book);
    out << "path\t" << args.out << '\n' << "entries\t" << book.size() << '\n';
    return kSuccess;
}

// ------------------------------------------------------------- algebra

struct AlgebraArgs {
    std::string op;
    std::vector<std::string> books;
    std::vector<std::string> labels;
    std::vector<double> weights;
    std::string out;
    std::string result_label = "result";
    std::int64_t k = 1;
};

Codebook merge_books(const std::vector<std::string>& paths) {
    std::optional<Codebook> merged;
    for (const auto& p : paths) {
        Codebook book = load_codebook(p);
        if (!merged) {
            merged.emplace(book.space());
        }
        if (book.space() != merged->space()) {
            throw space_mismatch("codebook " + p + " uses a different space");
        }
        book.for_each([&](const std::string& label, const Hypervector& code) {
            merged->insert(label, code);
        });
    }
    if (!merged) {
        throw std::invalid_argument("at least one --book is required");
    }
    return *std::move(merged);
}

int cmd_algebra(const Options& opt, const AlgebraArgs& args, std::ostream& out) {
    std::optional<Codebook> books;
    std::vector<Hypervector> codes;
    if (args.op != "unit") {
        books.emplace(merge_books(args.books));
        for (const auto& label : args.labels) {
            auto code = books->find(label);
            if (!code) {
                throw not_found("unknown label '" + label + "'");
            }
            codes.push_back(*std::move(code));
        }
    }
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (codes.size() < lo || codes.size() > hi) {
            throw std::invalid_argument(args.op + " takes " + std::to_string(lo) +
                                        (lo == hi ? "" : ".." + std::to_string(hi)) +
                                        " labels, got " + std::to_string(codes.size()));
        }
    };
    constexpr std::size_t kMany = static_cast<std::size_t>(-1);

    std::optional<Hypervector> result;
    if (args.op == "bundle") {
        arity(1, kMany);
        RngStream rng(opt.seed);
        if (args.weights.empty()) {
            result = bundle_uniform(codes, rng);
        } else {
            if (args.weights.size() != codes.size()) {
                throw std::invalid_argument("need one weight per label");
            }
            std::vector<WeightedOperand> ops;
            for (std::size_t i = 0; i < codes.size(); ++i) {
                ops.push_back({args.weights[i], codes[i]});
            }
            result = bundle(ops, rng);
        }
    } else if (args.op == "bind") {
        arity(1, kMany);
        result = segvsa::bind(codes);
    } else if (args.op == "release") {
        arity(2, 2);
        result = release(codes[0], codes[1]);
    } else if (args.op == "inverse") {
        arity(1, 1);
        result = inverse(codes[0]);
    } else if (args.op == "power") {
        arity(1, 1);
        result = power(codes[0], args.k);
    } else if (args.op == "unit") {
        result = unit(opt.space());
    } else {
        throw std::invalid_argument("unknown algebra operation '" + args.op + "'");
    }

    Codebook written(result->space());
    written.insert(args.result_label, *result);
    save_codebook(args.out, written);

    out << "op\t" << args.op << '\n' << "path\t" << args.out << '\n';
    if (books) {
        // Small books: compare against everything so unbinding round trips are visible.
        std::vector<std::string> against =
            books->size() <= kMatrixLimit ? books->labels() : args.labels;
        std::unordered_set<std::string> seen;
        for (const auto& label : against) {
            if (seen.insert(label).second) {
                out << "overlap\t" << label << '\t' << overlap(*result, books->at(label)) << '\n';
            }
        }
    }
    return kSuccess;
}

// ---------------------------------------------------------------- demo

int cmd_demo_mexico(const Options& opt, std::ostream& out) {
    const auto report = demo::run_mexico(opt.space(), opt.seed);
    std::size_t passed = 0;
    for (const auto& p : report.probes) {
        out << "probe\t" << p.name << '\n' << "expected\t" << p.expected << '\n';
        print_matches(out, p.top);
        out << "result\t" << (p.passed() ? "pass" : "FAIL") << '\n';
        passed += p.passed();
    }
    out << "summary\t" << passed << '/' << report.probes.size() << '\n';
    return report.all_passed() ? kSuccess : kDemoFailure;
}

// --------------------------------------------------------------- embed

struct TrainArgs {
    std::string model;
    std::vector<std::string> corpus;
    std::string stopwords;
};

struct QueryArgs {
    std::string model;
    std::string word;
    std::int32_t position = 1;
    std::string similar;
};

int cmd_embed_train(const Options& opt, const TrainArgs& args, std::ostream& out) {
    VocabularyModel model = fs::exists(args.model) ? load_model(args.model, opt.seed, opt.window)
                                                   : VocabularyModel(opt.space(), opt.seed, opt.window);
    std::set<std::string> stop;
    if (!args.stopwords.empty()) {
        for (auto& w : tokenize_words(read_file(args.stopwords))) {
            stop.insert(std::move(w));
        }
    }
    RngStream rng = RngStream(opt.seed).split(kTrainStreamKey);
    std::size_t tokens = 0;
    std::size_t documents = 0;
    for (const auto& path : args.corpus) {
        TokenStream stream = tokenize(read_file(path));
        if (!stop.empty()) {
            for (auto& doc : stream.documents) {
                std::erase_if(doc, [&](const std::string& w) { return stop.contains(w); });
            }
            std::erase_if(stream.documents, [](const auto& doc) { return doc.empty(); });
        }
        tokens += stream.token_count();
        documents += stream.documents.size();
        train_stream(stream, model, rng);
    }
    save_model(args.model, model);
    out << "path\t" << args.model << '\n'
        << "documents\t" << documents << '\n'
        << "tokens\t" << tokens << '\n'
        << "vocabulary\t" << model.learners().size() << '\n';
    return kSuccess;
}

int cmd_embed_query(const Options& opt, const QueryArgs& args, std::ostream& out) {
    const VocabularyModel model = load_model(args.model, opt.seed, opt.window);
    auto require = [&](const std::string& w) {
        if (!model.has_learner(w)) {
            throw not_found("unknown word '" + w + "'");
        }
    };
    require(args.word);
    if (!args.similar.empty()) {
        require(args.similar);
        out << "similarity\t" << args.word << '\t' << args.similar << '\t'
            << word_similarity(model, args.word, args.similar) << '\n';
        return kSuccess;
    }
    out << "word\t" << args.word << '\n' << "position\t" << args.position << '\n';
    print_matches(out, query_context(model, args.word, args.position, opt.topk));
    return kSuccess;
}

// --------------------------------------------------------------- stats

struct StatsArgs {
    std::vector<std::string> paths;
    std::string book;
};

void codebook_stats(const Codebook& book, std::ostream& out) {
    print_space(out, book.space());
    out << "entries\t" << book.size() << '\n';
    if (book.size() > kMatrixLimit) {
        return;
    }
    const auto labels = book.labels();
    const Hypervector identity = unit(book.space());
    for (const auto& label : labels) {
        const Hypervector code = book.at(label);
        const auto zeros = std::count(code.offsets().begin(), code.offsets().end(), 0);
        out << "zero_offsets\t" << label << '\t' << zeros << '\n';
        out << "is_unit\t" << label << '\t' << (code == identity ? "true" : "false") << '\n';
    }
    for (const auto& a : labels) {
        out << "overlap_row\t" << a;
        const Hypervector ca = book.at(a);
        for (const auto& b : labels) {
            out << '\t' << overlap(ca, book.at(b));
        }
        out << '\n';
    }
}

int cmd_stats(const Options& opt, const StatsArgs& args, std::ostream& out) {
    std::optional<Codebook> reference;
    if (!args.book.empty()) {
        reference.emplace(split_codec(load_codebook(args.book)).first);
    }
    for (const auto& path : args.paths) {
        auto in = io::open_for_read(path);
        io::Magic magic{};
        if (!io::peek_magic(in, magic)) {
            throw format_error(path + ": empty or truncated file");
        }
        out << "file\t" << path << '\n';
        const std::string tag(magic.begin(), magic.end());
        if (tag == "HVB1") {
            auto [book, codec] = split_codec(read_codebook(in));
            io::Magic next{};
            if (io::peek_magic(in, next) && std::string(next.begin(), next.end()) == "HVM1") {
                in.seekg(0);
                const VocabularyModel model = read_model(in, opt.seed, opt.window);
                out << "format\tHVM1\n";
                print_space(out, model.space());
                out << "vocabulary\t" << model.words().size() << '\n'
                    << "learners\t" << model.learners().size() << '\n';
                std::uint64_t feeds = 0;
                for (const auto& [word, learner] : model.learners()) {
                    feeds += learner.count();
                }
                out << "total_feeds\t" << feeds << '\n';
                if (model.learners().size() <= kMatrixLimit) {
                    for (const auto& [word, learner] : model.learners()) {
                        out << "learner\t" << word << '\t' << learner.count() << '\n';
                    }
                }
            } else {
                out << "format\tHVB1\n";
                out << "step_marker\t" << (codec ? "present" : "absent") << '\n';
                codebook_stats(book, out);
            }
        } else if (tag == "HVL1") {
            const OnlineLearner learner = read_learner(in);
            out << "format\tHVL1\n";
            print_space(out, *learner.space());
            out << "count\t" << learner.count() << '\n'
                << "seeded\t" << (learner.seeded() ? "true" : "false") << '\n';
            if (reference && learner.seeded()) {
                print_matches(out, reference->nearest(learner.snapshot(), opt.topk));
            }
        } else {
            throw format_error(path + ": unrecognized file magic");
        }
    }
    return kSuccess;
}

// ----------------------------------------------------------- roundtrip

struct RoundtripArgs {
    std::string kind;
    std::vector<std::string> books;
    std::vector<std::string> labels;
};

int cmd_roundtrip(const Options& opt, const RoundtripArgs& args, std::ostream& out) {
    auto [book, stored_codec] = split_codec(merge_books(args.books));
    std::vector<Hypervector> codes;
    for (const auto& label : args.labels) {
        auto code = book.find(label);
        if (!code) {
            throw not_found("unknown label '" + label + "'");
        }
        codes.push_back(*std::move(code));
    }
    const std::uint32_t threshold = opt.threshold >= 0 ? static_cast<std::uint32_t>(opt.threshold)
                                                       : default_threshold(book.space());
    RngStream rng(opt.seed);
    std::vector<std::string> decoded;
    if (args.kind == "set") {
        const Hypervector s = encode_set(codes, rng, [&](const std::string& msg) {
            out << "warning\t" << msg << '\n';
        });
        const auto members = decode_set(s, book, threshold);
        decoded.assign(members.begin(), members.end());
        for (const auto& m : book.matches_above(s, threshold)) {
            out << "member\t" << m.label << '\t' << m.overlap << '\n';
        }
        std::set<std::string> expected(args.labels.begin(), args.labels.end());
        out << "cardinality\t" << members.size() << '\n'
            << "exact\t" << (members == expected ? "true" : "false") << '\n';
    } else {
        RngStream marker_rng = RngStream(opt.seed).split(fnv1a64(kStepMarkerLabel));
        const SequenceCodec codec =
            stored_codec ? *stored_codec : SequenceCodec::generate(book.space(), marker_rng);
        const Hypervector s = encode_sequence(codes, codec, rng);
        decoded = decode_sequence(s, book, codec, threshold);
        for (std::size_t i = 0; i < decoded.size(); ++i) {
            out << "position\t" << i << '\t' << decoded[i] << '\n';
        }
        out << "length\t" << decoded.size() << '\n'
            << "exact\t" << (decoded == args.labels ? "true" : "false") << '\n';
    }
    out << "threshold\t" << threshold << '\n';
    return kSuccess;
}

// ---------------------------------------------------------------- feed

struct FeedArgs {
    std::string learner;
    std::vector<std::string> books;
    std::vector<std::string> labels;
};

int cmd_feed(const Options& opt, const FeedArgs& args, std::ostream& out) {
    const Codebook books = merge_books(args.books);
    OnlineLearner learner =
        fs::exists(args.learner) ? load_learner(args.learner) : OnlineLearner(books.space());
    // Continue the stream where the previous invocation stopped.
    RngStream rng = RngStream(opt.seed).split(learner.count());
    for (const auto& label : args.labels) {
        auto code = books.find(label);
        if (!code) {
            throw not_found("unknown label '" + label + "'");
        }
        learner.feed(*code, rng);
    }
    save_learner(args.learner, learner);
    out << "path\t" << args.learner << '\n' << "count\t" << learner.count() << '\n';
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Segmented sparse hypervector toolkit", "hvsa"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--dim", opt.dim, "Dimension N")->capture_default_str();
    app.add_option("--segwidth", opt.segwidth, "Segment width d = 1/s")->capture_default_str();
    app.add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    app.add_option("--threshold", opt.threshold, "Recovery threshold override (overlap count)");
    app.add_option("--window", opt.window, "Context half-window h")->capture_default_str();
    app.add_option("--topk", opt.topk, "Matches to report")->capture_default_str()->check(CLI::PositiveNumber);

    RandArgs rand_args;
    auto* rand = app.add_subcommand("rand", "Write labeled random codes to a codebook file");
    rand->add_option("--count", rand_args.count, "Number of codes")->capture_default_str();
    rand->add_option("--prefix", rand_args.prefix, "Label prefix")->capture_default_str();
    rand->add_option("--out", rand_args.out, "Output HVB1 path")->required();

    AlgebraArgs alg_args;
    auto* alg = app.add_subcommand("algebra", "Apply bundle/bind/release/inverse/power/unit");
    alg->add_option("op", alg_args.op, "Operation")
        ->required()
        ->check(CLI::IsMember({"bundle", "bind", "release", "inverse", "power", "unit"}));
    alg->add_option("labels", alg_args.labels, "Operand labels");
    alg->add_option("--book", alg_args.books, "Input codebook(s)")->allow_extra_args(false);
    alg->add_option("--weights", alg_args.weights, "Bundle weights, one per label");
    alg->add_option("--k", alg_args.k, "Exponent for power")->capture_default_str();
    alg->add_option("--label", alg_args.result_label, "Label of the written result")->capture_default_str();
    alg->add_option("--out", alg_args.out, "Output HVB1 path")->required();

    auto* demo = app.add_subcommand("demo-mexico", "Role/filler analogy demonstration");

    auto* embed = app.add_subcommand("embed", "Train or query word embeddings");
    embed->require_subcommand(1);
    TrainArgs train_args;
    auto* train = embed->add_subcommand("train", "Stream corpus files into a model (created or resumed)");
    train->add_option("--model", train_args.model, "Model path")->required();
    train->add_option("corpus", train_args.corpus, "UTF-8 text files")->required()->check(CLI::ExistingFile);
    train->add_option("--stopwords", train_args.stopwords, "File of words to drop (default: none)")
        ->check(CLI::ExistingFile);
    QueryArgs query_args;
    auto* query = embed->add_subcommand("query", "Context recovery or similarity");
    query->add_option("--model", query_args.model, "Model path")->required();
    query->add_option("word", query_args.word, "Center word")->required();
    query->add_option("--position", query_args.position, "Relative context position")->capture_default_str();
    query->add_option("--similar", query_args.similar, "Report similarity to this word instead");

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "Describe HVB1/HVL1/model files");
    stats->add_option("paths", stats_args.paths, "Files")->required();
    stats->add_option("--book", stats_args.book, "Codebook for learner snapshot matches");

    RoundtripArgs rt_args;
    auto* rt = app.add_subcommand("roundtrip", "Encode labels as a set or sequence and decode them back");
    rt->add_option("kind", rt_args.kind, "set | sequence")->required()->check(CLI::IsMember({"set", "sequence"}));
    rt->add_option("labels", rt_args.labels, "Member labels")->required();
    rt->add_option("--book", rt_args.books, "Codebook(s) used as cleanup memory")->allow_extra_args(false)->required();

    FeedArgs feed_args;
    auto* feed = app.add_subcommand("feed", "Feed labeled codes into a learner file (created or resumed)");
    feed->add_option("--learner", feed_args.learner, "HVL1 path")->required();
    feed->add_option("--book", feed_args.books, "Input codebook(s)")->allow_extra_args(false)->required();
    feed->add_option("labels", feed_args.labels, "Labels to feed in order")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*rand) return cmd_rand(opt, rand_args, out);
        if (*alg) return cmd_algebra(opt, alg_args, out);
        if (*demo) return cmd_demo_mexico(opt, out);
        if (*train) return cmd_embed_train(opt, train_args, out);
        if (*query) return cmd_embed_query(opt, query_args, out);
        if (*stats) return cmd_stats(opt, stats_args, out);
        if (*rt) return cmd_roundtrip(opt, rt_args, out);
        if (*feed) return cmd_feed(opt, feed_args, out);
    } catch (const io_error& e) {
        err << "error\t" << e.what() << '\n';
        return kIoError;
    } catch (const not_found& e) {
        err << "not-found\t" << e.what() << '\n';
        return kNotFound;
    } catch (const format_error& e) {
        err << "error\t" << e.what() << '\n';
        return kValidationError;
    } catch (const std::invalid_argument& e) {
        err << "error\t" << e.what() << '\n';
        return kValidationError;
    } catch (const std::out_of_range& e) {
        err << "not-found\t" << e.what() << '\n';
        return kNotFound;
    }
    return kUsage;
}

}  // namespace segvsa::cli
