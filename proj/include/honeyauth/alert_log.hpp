#pragma once

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "honeyauth/errors.hpp"
#include "honeyauth/responder.hpp"

namespace honeyauth {

struct AlertEvent {
    TimePoint ts;
    std::string uid;
    std::optional<std::size_t> index;
    double risk = 0;
    ResponseAction action;
};

// {"ts":"2026-01-02T03:04:05.678Z","uid":...,"index":...,"risk":...,"action":...}
std::string format_alert(const AlertEvent& event);

std::string format_timestamp(TimePoint ts);

class AlertSinkError : public Error {
public:
    using Error::Error;
};

class AlertSink {
public:
    virtual ~AlertSink() = default;
    // Throws AlertSinkError when the event cannot be recorded.
    virtual void emit(const AlertEvent& event) = 0;
    // Default: emit() each event in order.
    virtual void emit_batch(std::span<const AlertEvent> events);
};

// Appends one JSON line per event. Each line (or batch of lines) goes out in
// a single write() on an O_APPEND descriptor, so concurrent writers never
// interleave.
class AlertLog : public AlertSink {
public:
    explicit AlertLog(std::filesystem::path path);
    ~AlertLog() override;

    AlertLog(const AlertLog&) = delete;
    AlertLog& operator=(const AlertLog&) = delete;

    void emit(const AlertEvent& event) override;
    void emit_batch(std::span<const AlertEvent> events) override;

    const std::filesystem::path& path() const { return path_; }

private:
    void write_all(const std::string& text);

    std::filesystem::path path_;
    std::mutex mutex_;
    int fd_ = -1;
};

// Keeps events in memory; handy for tests and embedding.
class MemoryAlertSink : public AlertSink {
public:
    void emit(const AlertEvent& event) override;
    std::vector<AlertEvent> events() const;

private:
    mutable std::mutex mutex_;
    std::vector<AlertEvent> events_;
};

// Queues events and hands them to `target` on a worker thread that drains
// every `interval`, so a login that raises an alert neither waits for disk
// I/O nor pays for waking another thread. Failures from the target go to
// on_error. The destructor drains the queue.
class BackgroundAlertSink : public AlertSink {
public:
    explicit BackgroundAlertSink(AlertSink& target, std::function<void(const std::string&)> on_error = {},
                                 std::chrono::milliseconds interval = std::chrono::milliseconds(20));
    ~BackgroundAlertSink() override;

    BackgroundAlertSink(const BackgroundAlertSink&) = delete;
    BackgroundAlertSink& operator=(const BackgroundAlertSink&) = delete;

    void emit(const AlertEvent& event) override;

    // Blocks until every queued event has reached the target.
    void flush();

private:
    void run();

    AlertSink& target_;
    std::function<void(const std::string&)> on_error_;
    std::chrono::milliseconds interval_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable idle_;
    std::vector<AlertEvent> queue_;
    bool flushing_ = false;
    bool stopping_ = false;
    std::thread worker_;
};

}  // namespace honeyauth
