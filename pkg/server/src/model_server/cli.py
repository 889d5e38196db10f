"""Entry point: pick a transport and a registered model, then serve."""

import argparse

from .models import available_models, resolve_model
from .server import serve_http, serve_stdio


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="forecast-ref-server",
        description="Serve a forecasting callable over the JSON prediction protocol.",
    )
    parser.add_argument("--mode", choices=("stdio", "http"), default="stdio")
    parser.add_argument("--model", default="last_value",
                        help=f"one of: {', '.join(available_models())}")
    parser.add_argument("--coefficients", default=None,
                        help="JSON config path for the linear model")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8765, help="0 picks a free port")
    args = parser.parse_args(argv)

    model_args = [args.coefficients] if args.coefficients else []
    model = resolve_model(args.model, model_args)
    if args.mode == "stdio":
        serve_stdio(model)
    else:
        serve_http(model, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
