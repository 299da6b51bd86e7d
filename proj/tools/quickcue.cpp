// Copyright 2026 The QuickCue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <pthread.h>
#include <string>
#include <thread>

#include "quickcue/config.hpp"
#include "quickcue/error.hpp"
#include "quickcue/eval.hpp"
#include "quickcue/json_io.hpp"
#include "quickcue/log.hpp"
#include "quickcue/service.hpp"
#include "quickcue/wire.hpp"

namespace {

using namespace quickcue;

struct CommonOptions {
  std::optional<std::string> config;
  std::optional<std::string> mode;
  std::optional<std::string> today;
};

std::string read_text(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::string out;
  char buf[1 << 16];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  const bool bad = std::ferror(f) != 0;
  std::fclose(f);
  if (bad) throw Error(ErrorCode::kIoError, "cannot read " + path);
  return out;
}

void emit(const std::optional<std::string>& output, const std::string& body) {
  if (output) {
    write_text_file(*output, body);
  } else {
    std::cout << body << std::flush;
  }
}

ServiceConfig effective_config(const CommonOptions& opts) {
  ServiceConfig cfg = load_effective_config(opts.config);
  if (opts.mode) cfg.gateway.mode = parse_gateway_mode(*opts.mode);
  if (opts.today) {
    cfg.reference_date = parse_iso_date(*opts.today);
    if (!cfg.reference_date) {
      throw Error(ErrorCode::kConfigError, "--today must be a YYYY-MM-DD date");
    }
  }
  return cfg;
}

// Non-2xx documents become a one-line diagnostic and exit status 1.
int finish(const HttpResponse& r, const std::optional<std::string>& output) {
  if (r.status == 200) {
    emit(output, r.body);
    return 0;
  }
  const Json err = Json::parse(r.body)["error"];
  std::string line = err["code"].get<std::string>() + ": " + err["message"].get<std::string>();
  if (err.contains("path")) line += " (at " + err["path"].get<std::string>() + ")";
  throw std::runtime_error(line);
}

int run_serve(const CommonOptions& opts, std::optional<std::string> host,
              std::optional<int> port) {
  ServiceConfig cfg = effective_config(opts);
  if (host) cfg.host = *host;
  if (port) cfg.port = *port;

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto service = Service::create(cfg);
  HttpServer server(*service);
  const int bound = server.bind(cfg.host, cfg.port);
  logger()->info("listening on http://{}:{} ({} mode)", cfg.host, bound,
                 to_string(cfg.gateway.mode));

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    logger()->info("received signal {}; shutting down", sig);
    server.stop();
  });
  server.run();
  // Wakes the waiter if the server stopped on its own.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  logger()->info("server stopped");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Review digests: aspect-sentiment classification, focused summaries, evaluation"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging on stderr");

  CommonOptions common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "Config file (default: $QUICKCUE_CONFIG)");
    sub->add_option("--mode", common.mode, "Gateway mode, overriding the config")
        ->check(CLI::IsMember({"mock", "live"}, CLI::ignore_case));
    sub->add_option("--today", common.today,
                    "Reference date YYYY-MM-DD for the recency filter");
  };

  std::string input;
  std::optional<std::string> output;

  auto* classify = app.add_subcommand("classify", "Classify every review of a review set");
  classify->add_option("--input", input, "RestaurantReviewSet JSON file")->required();
  classify->add_option("--output", output, "Output file (default: stdout)");
  add_common(classify);

  auto* digest = app.add_subcommand("digest", "Build the five-aspect digest of a review set");
  digest->add_option("--input", input, "RestaurantReviewSet JSON file")->required();
  digest->add_option("--output", output, "Output file (default: stdout)");
  add_common(digest);

  std::optional<std::string> gold;
  std::optional<std::string> pred;
  std::optional<std::string> annotations;
  auto* eval = app.add_subcommand("eval", "Score predictions against gold annotations");
  auto* gold_opt = eval->add_option("--gold", gold, "Gold annotation file");
  auto* pred_opt = eval->add_option("--pred", pred,
                                    "Prediction file or `classify` output");
  gold_opt->needs(pred_opt);
  pred_opt->needs(gold_opt);
  eval->add_option("--annotations", annotations,
                   "Summary annotation scores (factuality/noisiness)");
  eval->add_option("--output", output, "Also write the report as JSON to this file");

  std::optional<std::string> host;
  std::optional<int> port;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", common.config, "Config file (default: $QUICKCUE_CONFIG)");
  serve->add_option("--mode", common.mode, "Gateway mode, overriding the config")
      ->check(CLI::IsMember({"mock", "live"}, CLI::ignore_case));
  serve->add_option("--host", host, "Bind address, overriding the config");
  serve->add_option("--port", port, "Port, overriding the config")->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
    if (eval->parsed() && !gold && !annotations) {
      throw CLI::ValidationError("eval", "needs --gold and --pred, or --annotations");
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "quickcue: " << e.what() << " (see --help)\n";
    return 2;
  }

  logger()->set_level(verbose              ? spdlog::level::debug
                      : serve->parsed() ? spdlog::level::info
                                          : spdlog::level::warn);
  try {
    if (classify->parsed() || digest->parsed()) {
      const std::string body = read_text(input);
      auto service = Service::create(effective_config(common));
      return finish(classify->parsed() ? service->classify(body) : service->digest(body),
                    output);
    }
    if (eval->parsed()) {
      Json report_json = Json::object();
      if (gold) {
        const auto gold_set = gold_from_json(read_json_file(*gold));
        const auto predictions = predictions_from_json(read_json_file(*pred));
        const ClassifierReport report = evaluate_classifier(gold_set, predictions);
        std::cout << format_report(report);
        report_json = report_to_json(report);
      }
      if (annotations) {
        const auto scores = annotations_from_json(read_json_file(*annotations));
        const AnnotationAggregate agg = aggregate_annotations(scores);
        std::printf("%sfactuality (average of averages): %.4f\n", gold ? "\n" : "",
                    agg.factuality);
        std::printf("noisiness (average of averages):  %.4f\n", agg.noisiness);
        report_json["annotations"] =
            Json{{"factuality", agg.factuality}, {"noisiness", agg.noisiness}};
      }
      std::cout << std::flush;
      if (output) write_text_file(*output, serialize(report_json));
      return 0;
    }
    return run_serve(common, host, port);
  } catch (const SchemaError& e) {
    std::cerr << "quickcue: " << to_string(e.code()) << ": " << e.what();
    if (!e.path().empty()) std::cerr << " (at " << e.path() << ")";
    std::cerr << "\n";
  } catch (const Error& e) {
    std::cerr << "quickcue: " << to_string(e.code()) << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "quickcue: " << e.what() << "\n";
  }
  return 1;
}
