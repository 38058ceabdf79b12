from etakit.cli.router import main

raise SystemExit(main())
