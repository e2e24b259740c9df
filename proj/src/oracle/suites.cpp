#include "qbound/common.hpp"
#include "qbound/oracle/crosscheck.hpp"
#include "qbound/oracle/script.hpp"

#include <future>
#include <thread>

namespace qbound::oracle {

namespace {

const EmbeddedSuite* find_suite(const std::string& name)
{
    for (const auto& s : embedded_suites())
        if (name == s.name) return &s;
    return nullptr;
}

} // namespace

std::vector<std::string> suite_names()
{
    std::vector<std::string> out;
    for (const auto& s : embedded_suites()) out.emplace_back(s.name);
    return out;
}

SuiteReport run_suite(const std::string& name)
{
    const EmbeddedSuite* s = find_suite(name);
    if (!s) throw Error("unknown oracle suite '" + name + "'");
    if (name == "classifier-crosscheck") return run_classifier_crosscheck(s->text);
    Interpreter in;
    return in.run(s->text, name);
}

std::vector<SuiteReport> run_all_suites()
{
    // Interpreters share nothing, so suites run on their own threads when
    // there is more than one core to run them on.
    const auto policy = std::thread::hardware_concurrency() > 1 ? std::launch::async : std::launch::deferred;
    std::vector<std::future<SuiteReport>> jobs;
    for (const auto& name : suite_names()) jobs.push_back(std::async(policy, [name] { return run_suite(name); }));
    std::vector<SuiteReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

} // namespace qbound::oracle
