#!/usr/bin/env python3
"""
Startup script for the Feeder Reconfiguration API
"""

import uvicorn

from app.config import configure_logging, settings
from app.network_loader import list_bundled_networks


def create_directories():
    """Create necessary directories"""
    settings.OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    print(f"✓ Output directory: {settings.OUTPUT_DIR}")


def check_networks():
    """Check that the network directory holds at least one network"""
    networks = list_bundled_networks()
    if not networks:
        print(f"❌ No network files found in {settings.DATA_DIR}")
        print("Set FEEDER_DATA_DIR to a directory of network JSON files.")
        return False

    print(f"✓ Networks available: {', '.join(networks)}")
    return True


def main():
    """Main startup function"""
    print("🚀 Starting Feeder Reconfiguration API...")
    configure_logging()

    # Create necessary directories
    create_directories()

    # Check networks
    if not check_networks():
        print("\n❌ Startup failed. Please fix the network configuration.")
        return

    print("\n✓ All checks passed!")
    print("🌐 Starting FastAPI server...")
    print("📍 API will be available at: http://localhost:8000")
    print("📖 API documentation: http://localhost:8000/docs")
    print("\n" + "="*50)

    # Start the server
    uvicorn.run(
        "app.main:app",
        host="0.0.0.0",
        port=8000,
        reload=True,
        log_level="info"
    )


if __name__ == "__main__":
    main()
