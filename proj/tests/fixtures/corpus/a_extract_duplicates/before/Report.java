package shop;

import java.util.List;

public class Report {
  private List<String> lines;

  public void printSummary(int total) {
    String header = "Total: " + total;
    lines.add(header);
    lines.add("----");
    System.out.println("summary");
  }

  public void printDetail(int count) {
    String header = "Total: " + count;
    lines.add(header);
    lines.add("----");
    System.out.println("detail");
  }
}
