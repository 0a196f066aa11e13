#include <doctest.h>

#include <mutex>
#include <thread>
#include <vector>

#include "honeyauth/checker_net.hpp"
#include "honeyauth/honeychecker.hpp"

using namespace honeyauth;

TEST_CASE("reply padding") {
    CHECK(pad_reply("OK") == "OK     \n");
    CHECK(pad_reply("REAL").size() == kReplyWidth);
    CHECK(pad_reply("HONEY") == "HONEY  \n");
    CHECK(pad_reply("ERR RANGE") == "ERR RANGE  \n");
    CHECK(pad_reply("ERR UNKNOWN") == "ERR UNKNOWN\n");
    CHECK(pad_reply("ERR SYNTAX").size() == kErrorReplyWidth);
}

TEST_CASE("SET semantics") {
    CheckerIndex idx;
    CHECK(handle_request(idx, "SET alice 20 7") == pad_reply("OK"));
    CHECK(handle_request(idx, "SET alice 20 20") == pad_reply("ERR RANGE"));
    CHECK(handle_request(idx, "SET alice 20 3") == pad_reply("OK"));
    CHECK(handle_request(idx, "SET alice 20 9") == pad_reply("OK"));
    CHECK(handle_request(idx, "CHECK alice 9") == pad_reply("REAL"));
    CHECK(handle_request(idx, "CHECK alice 3") == pad_reply("HONEY"));
    CHECK(handle_request(idx, "SET alice 0 0") == pad_reply("ERR RANGE"));
}

TEST_CASE("CHECK semantics") {
    CheckerIndex idx;
    idx.set("alice", 20, 3);
    CHECK(handle_request(idx, "CHECK alice 3") == pad_reply("REAL"));
    CHECK(handle_request(idx, "CHECK alice 2") == pad_reply("HONEY"));
    CHECK(handle_request(idx, "CHECK bob 0") == pad_reply("ERR UNKNOWN"));
    CHECK(handle_request(idx, "CHECK alice 20") == pad_reply("ERR RANGE"));
    CHECK(idx.check("alice", 3) == CheckVerdict::REAL);
    try {
        idx.check("bob", 0);
        FAIL("expected CheckerError");
    } catch (const CheckerError& e) {
        CHECK(e.code() == CheckerErrorCode::UNKNOWN);
    }
}

TEST_CASE("REMOVE semantics") {
    CheckerIndex idx;
    idx.set("alice", 20, 3);
    CHECK(handle_request(idx, "REMOVE alice") == pad_reply("OK"));
    CHECK(handle_request(idx, "CHECK alice 3") == pad_reply("ERR UNKNOWN"));
    CHECK(handle_request(idx, "REMOVE alice") == pad_reply("OK"));
    CHECK(handle_request(idx, "SET alice 20 3") == pad_reply("OK"));
    CHECK(handle_request(idx, "CHECK alice 3") == pad_reply("REAL"));
}

TEST_CASE("malformed requests") {
    CheckerIndex idx;
    for (const char* line : {"", "PING extra", "SET alice", "SET alice 20 x", "SET al ice 20 1", "CHECK alice -1",
                             "FROB", "set alice 20 1", "SET alice 20 1 2", "CHECK alice 1e3"}) {
        CAPTURE(line);
        CHECK(handle_request(idx, line) == pad_reply("ERR SYNTAX"));
    }
    CHECK(handle_request(idx, "PING") == pad_reply("PONG"));
    CHECK(idx.size() == 0);
}

TEST_CASE("endpoint parsing") {
    auto e = Endpoint::parse("10.0.0.1:9000");
    CHECK(e.host == "10.0.0.1");
    CHECK(e.port == 9000);
    CHECK(Endpoint::parse(":7071").host == "127.0.0.1");
    CHECK(e.str() == "10.0.0.1:9000");
    CHECK_THROWS(Endpoint::parse("nohost"));
    CHECK_THROWS(Endpoint::parse("h:70000"));
}

TEST_CASE("TCP server and client") {
    CheckerIndex idx;
    std::mutex seen_mutex;
    std::vector<std::string> seen;
    CheckerServerOptions opts;
    opts.observer = [&](std::string_view line) {
        std::lock_guard lock(seen_mutex);
        seen.emplace_back(line);
    };
    CheckerServer server(idx, opts);
    server.start(Endpoint{"127.0.0.1", 0});
    REQUIRE(server.port() != 0);

    TcpCheckerClient client(Endpoint{"127.0.0.1", server.port()});
    CHECK(client.ping());
    client.set("alice", 20, 7);
    CHECK(client.check("alice", 7) == CheckVerdict::REAL);
    CHECK(client.check("alice", 6) == CheckVerdict::HONEY);
    CHECK_THROWS_AS(client.check("bob", 0), CheckerError);
    CHECK(client.request("SET alice 20 20") == "ERR RANGE");
    client.remove("alice");
    CHECK_THROWS_AS(client.check("alice", 7), CheckerError);

    std::vector<std::thread> threads;
    std::atomic<int> real{0};
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            TcpCheckerClient c(Endpoint{"127.0.0.1", server.port()});
            auto uid = "user" + std::to_string(t);
            c.set(uid, 10, static_cast<std::size_t>(t));
            for (std::size_t i = 0; i < 10; ++i)
                if (c.check(uid, i) == CheckVerdict::REAL) ++real;
        });
    }
    for (auto& th : threads) th.join();
    CHECK(real == 8);

    {
        std::lock_guard lock(seen_mutex);
        CHECK(seen.front() == "PING");
        CHECK(seen[1] == "SET alice 20 7");
    }
    server.stop();
    TcpCheckerClient dead(Endpoint{"127.0.0.1", server.port()}, std::chrono::milliseconds(200));
    CHECK_THROWS_AS(dead.check("alice", 0), CheckerUnavailable);
}
