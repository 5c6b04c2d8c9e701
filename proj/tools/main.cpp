#include "lecturekit/service/cli.hpp"

int main(int argc, char** argv)
{
    return lecturekit::service::cliMain(argc, argv);
}
