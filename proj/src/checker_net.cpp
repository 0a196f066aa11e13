#include "honeyauth/checker_net.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cstring>

#include "honeyauth/text.hpp"

namespace honeyauth {

namespace {

struct AddrInfo {
    addrinfo* head = nullptr;
    ~AddrInfo() {
        if (head) freeaddrinfo(head);
    }
};

AddrInfo resolve(const Endpoint& ep, bool passive) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    if (passive) hints.ai_flags = AI_PASSIVE;
    AddrInfo info;
    auto port = std::to_string(ep.port);
    int rc = getaddrinfo(ep.host.c_str(), port.c_str(), &hints, &info.head);
    if (rc != 0) throw CheckerUnavailable("cannot resolve " + ep.str() + ": " + gai_strerror(rc));
    return info;
}

void set_nodelay(int fd) {
    int one = 1;
    setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

bool send_all(int fd, std::string_view data) {
    while (!data.empty()) {
        ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
    return true;
}

}  // namespace

Endpoint Endpoint::parse(std::string_view text) {
    auto colon = text.rfind(':');
    if (colon == std::string_view::npos) throw ConfigError("endpoint must be host:port, got '" + std::string(text) + "'");
    Endpoint ep;
    auto host = text.substr(0, colon);
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
    if (!host.empty()) ep.host = std::string(host);
    auto port = text.substr(colon + 1);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
    if (ec != std::errc{} || ptr != port.data() + port.size() || port.empty() || value > 65535)
        throw ConfigError("bad port in endpoint '" + std::string(text) + "'");
    ep.port = static_cast<std::uint16_t>(value);
    return ep;
}

std::string Endpoint::str() const {
    if (host.find(':') != std::string::npos) return "[" + host + "]:" + std::to_string(port);
    return host + ":" + std::to_string(port);
}

Endpoint default_checker_endpoint() {
    if (const char* env = std::getenv("HC_BIND"); env && *env) return Endpoint::parse(env);
    return {};
}

CheckerServer::CheckerServer(CheckerIndex& index, CheckerServerOptions options)
    : index_(index), options_(std::move(options)) {}

CheckerServer::~CheckerServer() { stop(); }

void CheckerServer::start(const Endpoint& bind) {
    if (running_) throw Error("checker server already running");
    auto info = resolve(bind, true);
    int fd = -1;
    for (auto* ai = info.head; ai; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
        if (fd < 0) continue;
        int one = 1;
        setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 128) == 0) break;
        ::close(fd);
        fd = -1;
    }
    if (fd < 0) throw Error("cannot bind checker to " + bind.str() + ": " + std::strerror(errno));
    sockaddr_storage addr{};
    socklen_t len = sizeof addr;
    getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.ss_family == AF_INET6 ? reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port
                                             : reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
    if (::pipe2(wake_pipe_, O_CLOEXEC) != 0) {
        ::close(fd);
        throw Error("pipe failed");
    }
    listen_fd_ = fd;
    running_ = true;
    acceptor_ = std::thread([this] { accept_loop(); });
}

void CheckerServer::accept_loop() {
    while (running_) {
        pollfd fds[2] = {{listen_fd_, POLLIN, 0}, {wake_pipe_[0], POLLIN, 0}};
        if (::poll(fds, 2, -1) < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (fds[1].revents) break;
        if (!(fds[0].revents & POLLIN)) continue;
        int client = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
        if (client < 0) continue;
        std::lock_guard lock(mutex_);
        reap_locked(false);
        if (active_ >= options_.max_connections) {
            ::close(client);
            continue;
        }
        set_nodelay(client);
        ++active_;
        auto& conn = connections_.emplace_back();
        conn.fd = client;
        conn.thread = std::thread([this, &conn] { serve(conn); });
    }
}

void CheckerServer::serve(Connection& conn) {
    std::string buffer;
    char chunk[512];
    bool open = true;
    while (open) {
        ssize_t n = ::recv(conn.fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t start = 0;
        for (auto nl = buffer.find('\n'); nl != std::string::npos; nl = buffer.find('\n', start)) {
            std::string_view line(buffer.data() + start, nl - start);
            start = nl + 1;
            if (options_.observer) options_.observer(line);
            std::string reply = line.size() > options_.max_line ? pad_reply("ERR SYNTAX") : handle_request(index_, line);
            if (!send_all(conn.fd, reply)) {
                open = false;
                break;
            }
        }
        buffer.erase(0, start);
        if (open && buffer.size() > options_.max_line) {
            send_all(conn.fd, pad_reply("ERR SYNTAX"));
            break;
        }
    }
    ::shutdown(conn.fd, SHUT_RDWR);
    --active_;
    conn.done = true;
}

void CheckerServer::reap_locked(bool all) {
    for (auto it = connections_.begin(); it != connections_.end();) {
        if (all) ::shutdown(it->fd, SHUT_RDWR);
        if (all || it->done) {
            if (it->thread.joinable()) it->thread.join();
            ::close(it->fd);
            it = connections_.erase(it);
        } else {
            ++it;
        }
    }
}

void CheckerServer::stop() {
    if (!running_.exchange(false)) return;
    char b = 1;
    [[maybe_unused]] auto w = ::write(wake_pipe_[1], &b, 1);
    if (acceptor_.joinable()) acceptor_.join();
    {
        std::lock_guard lock(mutex_);
        reap_locked(true);
    }
    ::close(listen_fd_);
    ::close(wake_pipe_[0]);
    ::close(wake_pipe_[1]);
    listen_fd_ = wake_pipe_[0] = wake_pipe_[1] = -1;
}

TcpCheckerClient::TcpCheckerClient(Endpoint endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {}

TcpCheckerClient::~TcpCheckerClient() {
    std::lock_guard lock(mutex_);
    close_locked();
}

void TcpCheckerClient::close_locked() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
    buffer_.clear();
}

void TcpCheckerClient::connect_locked() {
    auto info = resolve(endpoint_, false);
    for (auto* ai = info.head; ai; ai = ai->ai_next) {
        int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC | SOCK_NONBLOCK, ai->ai_protocol);
        if (fd < 0) continue;
        int rc = ::connect(fd, ai->ai_addr, ai->ai_addrlen);
        if (rc != 0 && errno == EINPROGRESS) {
            pollfd p{fd, POLLOUT, 0};
            if (::poll(&p, 1, static_cast<int>(timeout_.count())) == 1) {
                int err = 0;
                socklen_t len = sizeof err;
                getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
                rc = err == 0 ? 0 : -1;
            }
        }
        if (rc != 0) {
            ::close(fd);
            continue;
        }
        ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) & ~O_NONBLOCK);
        timeval tv{static_cast<time_t>(timeout_.count() / 1000), static_cast<suseconds_t>((timeout_.count() % 1000) * 1000)};
        setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
        setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
        set_nodelay(fd);
        fd_ = fd;
        return;
    }
    throw CheckerUnavailable("cannot connect to honeychecker at " + endpoint_.str());
}

std::string TcpCheckerClient::exchange_locked(std::string_view line) {
    std::string msg(line);
    msg.push_back('\n');
    if (!send_all(fd_, msg)) throw CheckerUnavailable("send to honeychecker failed");
    while (true) {
        auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string reply = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return std::string(trim(reply));
        }
        char chunk[64];
        ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) throw CheckerUnavailable("honeychecker closed the connection or timed out");
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

std::string TcpCheckerClient::request(std::string_view line) {
    std::lock_guard lock(mutex_);
    for (int attempt = 0;; ++attempt) {
        try {
            if (fd_ < 0) connect_locked();
            return exchange_locked(line);
        } catch (const CheckerUnavailable&) {
            close_locked();
            if (attempt >= 1) throw;
        }
    }
}

namespace {

[[noreturn]] void throw_reply(const std::string& reply) {
    if (reply == "ERR RANGE") throw CheckerError(CheckerErrorCode::RANGE);
    if (reply == "ERR UNKNOWN") throw CheckerError(CheckerErrorCode::UNKNOWN);
    if (reply == "ERR SYNTAX") throw CheckerError(CheckerErrorCode::SYNTAX);
    throw CheckerUnavailable("unexpected honeychecker reply '" + reply + "'");
}

}  // namespace

CheckVerdict TcpCheckerClient::check(std::string_view uid, std::size_t index) {
    auto reply = request("CHECK " + std::string(uid) + " " + std::to_string(index));
    if (reply == "REAL") return CheckVerdict::REAL;
    if (reply == "HONEY") return CheckVerdict::HONEY;
    throw_reply(reply);
}

void TcpCheckerClient::set(std::string_view uid, std::size_t k, std::size_t index) {
    auto reply = request("SET " + std::string(uid) + " " + std::to_string(k) + " " + std::to_string(index));
    if (reply != "OK") throw_reply(reply);
}

void TcpCheckerClient::remove(std::string_view uid) {
    auto reply = request("REMOVE " + std::string(uid));
    if (reply != "OK") throw_reply(reply);
}

bool TcpCheckerClient::ping() {
    try {
        return request("PING") == "PONG";
    } catch (const CheckerUnavailable&) {
        return false;
    }
}

}  // namespace honeyauth
