#include "honeyauth/alert_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ctime>

#include <json.hpp>

namespace honeyauth {

std::string format_timestamp(TimePoint ts) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(ts.time_since_epoch()).count();
    std::time_t secs = static_cast<std::time_t>(ms / 1000);
    if (ms % 1000 < 0) --secs;
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(((ms % 1000) + 1000) % 1000));
    return out;
}

std::string format_alert(const AlertEvent& e) {
    nlohmann::ordered_json j;
    j["ts"] = format_timestamp(e.ts);
    j["uid"] = e.uid;
    if (e.index)
        j["index"] = *e.index;
    else
        j["index"] = nullptr;
    j["risk"] = e.risk;
    j["action"] = to_string(e.action);
    return j.dump();
}

AlertLog::AlertLog(std::filesystem::path path) : path_(std::move(path)) {
    fd_ = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0600);
    if (fd_ < 0) throw AlertSinkError("cannot open alert log '" + path_.string() + "': " + std::strerror(errno));
}

AlertLog::~AlertLog() {
    if (fd_ >= 0) ::close(fd_);
}

void AlertSink::emit_batch(std::span<const AlertEvent> events) {
    for (const auto& e : events) emit(e);
}

void AlertLog::write_all(const std::string& text) {
    std::lock_guard lock(mutex_);
    ssize_t n;
    do {
        n = ::write(fd_, text.data(), text.size());
    } while (n < 0 && errno == EINTR);
    if (n != static_cast<ssize_t>(text.size()))
        throw AlertSinkError("alert log write failed for '" + path_.string() + "'");
}

void AlertLog::emit(const AlertEvent& event) {
    std::string line = format_alert(event);
    line.push_back('\n');
    write_all(line);
}

void AlertLog::emit_batch(std::span<const AlertEvent> events) {
    std::string text;
    for (const auto& e : events) {
        text += format_alert(e);
        text.push_back('\n');
    }
    if (!text.empty()) write_all(text);
}

void MemoryAlertSink::emit(const AlertEvent& event) {
    std::lock_guard lock(mutex_);
    events_.push_back(event);
}

std::vector<AlertEvent> MemoryAlertSink::events() const {
    std::lock_guard lock(mutex_);
    return events_;
}

BackgroundAlertSink::BackgroundAlertSink(AlertSink& target, std::function<void(const std::string&)> on_error,
                                         std::chrono::milliseconds interval)
    : target_(target), on_error_(std::move(on_error)), interval_(interval), worker_([this] { run(); }) {}

BackgroundAlertSink::~BackgroundAlertSink() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    wake_.notify_one();
    worker_.join();
}

void BackgroundAlertSink::emit(const AlertEvent& event) {
    std::lock_guard lock(mutex_);
    queue_.push_back(event);
}

void BackgroundAlertSink::flush() {
    std::unique_lock lock(mutex_);
    flushing_ = true;
    wake_.notify_one();
    idle_.wait(lock, [this] { return !flushing_; });
}

void BackgroundAlertSink::run() {
    std::unique_lock lock(mutex_);
    for (;;) {
        wake_.wait_for(lock, interval_, [this] { return stopping_ || flushing_; });
        while (!queue_.empty()) {
            std::vector<AlertEvent> batch;
            batch.swap(queue_);
            lock.unlock();
            try {
                target_.emit_batch(batch);
            } catch (const std::exception& e) {
                if (on_error_) on_error_(e.what());
            }
            lock.lock();
        }
        flushing_ = false;
        idle_.notify_all();
        if (stopping_) break;
    }
}

}  // namespace honeyauth
