package spdy;

public class SpdyConnection {
  private int streams;

  public int streamCount() {
    return streams;
  }
}
