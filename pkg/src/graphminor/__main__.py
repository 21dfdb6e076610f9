from graphminor.cli import main

raise SystemExit(main())
