// HTTP transport for DbClient, isolated so httplib is compiled once.

#include <string>

#include <httplib.h>

#include "heckespan/errors.hpp"

namespace heckespan::nf {

struct network_error : data_unavailable {
    using data_unavailable::data_unavailable;
};

std::string heckespan_http_get(const std::string& base,
                               const std::string& path) {
    httplib::Client client(base);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(10, 0);
    auto res = client.Get(path);
    if (!res)
        throw network_error("retryable: connection to " + base + " failed (" +
                            httplib::to_string(res.error()) + ")");
    if (res->status != 200)
        throw data_unavailable("database returned HTTP " +
                               std::to_string(res->status) + " for " + path);
    return res->body;
}

}  // namespace heckespan::nf
